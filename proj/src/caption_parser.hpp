#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace sgvq {

enum class PosTag { Noun, Verb, Adj, Prep, Det, Cop, Other };

const char* tag_name(PosTag t);

struct TaggedToken {
    std::string text;
    PosTag tag = PosTag::Noun;
};

// Lexicon lookup first, suffix heuristics second, NOUN default last.
// An optional "word<TAB>TAG" file extends/overrides the embedded table.
class Tagger {
public:
    Tagger();
    void load_lexicon_file(const std::string& path);

    std::vector<TaggedToken> tag_tokens(const std::string& sentence) const;

private:
    std::map<std::string, PosTag> lexicon_;
};

// Strips -ing / -ed with consonant undoubling and silent-e restoration;
// irregular forms via an embedded table; identity fallback.
std::string lemmatize_verb(const std::string& token);

struct ParseResult {
    SceneGraph graph;
    std::string diagnostic; // non-empty when no pattern fired on non-empty input
};

// Turns one caption sentence into a scene-graph fragment. The bbox, when
// given, is attached to the first subject emitted.
ParseResult parse_caption(const Tagger& tagger, const std::string& sentence,
                          std::optional<BoundingBox> bbox = std::nullopt);

} // namespace sgvq
