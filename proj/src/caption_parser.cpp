#include "caption_parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lexicon.hpp"

namespace sgvq {

const char* tag_name(PosTag t) {
    switch (t) {
    case PosTag::Noun: return "NOUN";
    case PosTag::Verb: return "VERB";
    case PosTag::Adj: return "ADJ";
    case PosTag::Prep: return "PREP";
    case PosTag::Det: return "DET";
    case PosTag::Cop: return "COP";
    case PosTag::Other: return "OTHER";
    }
    return "?";
}

namespace {

PosTag tag_from_name(const std::string& name) {
    if (name == "NOUN") return PosTag::Noun;
    if (name == "VERB") return PosTag::Verb;
    if (name == "ADJ") return PosTag::Adj;
    if (name == "PREP") return PosTag::Prep;
    if (name == "DET") return PosTag::Det;
    if (name == "COP") return PosTag::Cop;
    if (name == "OTHER") return PosTag::Other;
    throw ParseError("unknown POS tag: '" + name + "'");
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_consonant(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) &&
           !strchr("aeiou", c);
}

} // namespace

Tagger::Tagger() : lexicon_(lexicon::embedded()) {}

void Tagger::load_lexicon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open lexicon file: " + path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError("lexicon file line " + std::to_string(lineno) +
                             ": expected 'word<TAB>TAG'");
        std::string word = line.substr(0, tab);
        std::transform(word.begin(), word.end(), word.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        lexicon_[word] = tag_from_name(line.substr(tab + 1));
    }
}

std::vector<TaggedToken> Tagger::tag_tokens(const std::string& sentence) const {
    std::vector<TaggedToken> out;
    std::string word;
    auto flush = [&] {
        if (word.empty()) return;
        PosTag tag;
        auto it = lexicon_.find(word);
        if (it != lexicon_.end()) {
            tag = it->second;
        } else if ((ends_with(word, "ing") || ends_with(word, "ed")) &&
                   word.size() > 4) {
            tag = PosTag::Verb;
        } else if (ends_with(word, "s") && word.size() > 2 &&
                   (lexicon::base_verbs().count(word.substr(0, word.size() - 1)) ||
                    (ends_with(word, "es") &&
                     lexicon::base_verbs().count(word.substr(0, word.size() - 2))))) {
            // third-person singular of a known verb
            tag = PosTag::Verb;
        } else if (ends_with(word, "ful") || ends_with(word, "ish") ||
                   (ends_with(word, "y") && word.size() > 3)) {
            tag = PosTag::Adj;
        } else {
            tag = PosTag::Noun;
        }
        out.push_back({word, tag});
        word.clear();
    };
    for (char raw : sentence) {
        char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
        if (std::isalnum(static_cast<unsigned char>(c)) ||
            (c == '-' && !word.empty()) || (c == '\'' && !word.empty())) {
            word.push_back(c);
        } else {
            flush();
        }
    }
    flush();
    return out;
}

std::string lemmatize_verb(const std::string& token) {
    const auto& irregular = lexicon::irregular_verbs();
    auto it = irregular.find(token);
    if (it != irregular.end()) return it->second;
    if (lexicon::base_verbs().count(token)) return token;
    if (ends_with(token, "es") &&
        lexicon::base_verbs().count(token.substr(0, token.size() - 2)))
        return token.substr(0, token.size() - 2);
    if (ends_with(token, "s") &&
        lexicon::base_verbs().count(token.substr(0, token.size() - 1)))
        return token.substr(0, token.size() - 1);

    std::string stem;
    if (ends_with(token, "ing") && token.size() > 4) {
        stem = token.substr(0, token.size() - 3);
    } else if (ends_with(token, "ed") && token.size() > 3) {
        stem = token.substr(0, token.size() - 2);
    } else {
        return token;
    }
    if (lexicon::restore_e_stems().count(stem)) return stem + "e";
    if (stem.size() >= 3 && stem[stem.size() - 1] == stem[stem.size() - 2] &&
        is_consonant(stem.back()) && !lexicon::keep_double_stems().count(stem)) {
        stem.pop_back();
    }
    return stem;
}

namespace {

// Left-to-right pattern pass over tagged tokens. Rule priority at each
// position: passive > copular > verb phrase (incl. clausal "that VERB") >
// "with" attribute phrase > bare prepositional relationship. Adjectives
// directly before a noun always become that noun's attributes.
struct CaptionPass {
    const std::vector<TaggedToken>& toks;
    SceneGraph& g;
    std::optional<BoundingBox> bbox;
    size_t i = 0;
    int head_subject = -1;
    bool emitted = false;

    bool at(size_t j, PosTag t) const { return j < toks.size() && toks[j].tag == t; }
    bool at_text(size_t j, const char* s) const {
        return j < toks.size() && toks[j].text == s;
    }

    void skip_det() {
        while (at(i, PosTag::Det) || at(i, PosTag::Other)) ++i;
    }

    // ADJ* NOUN -> subject node with attribute edges; -1 if no noun here.
    int parse_np() {
        size_t j = i;
        std::vector<std::string> adjs;
        while (at(j, PosTag::Det)) ++j;
        while (at(j, PosTag::Adj)) adjs.push_back(toks[j++].text);
        if (!at(j, PosTag::Noun)) return -1;
        int subject = g.add_node(NodeKind::Subject, toks[j].text);
        if (bbox && head_subject < 0) {
            g.set_bbox(subject, *bbox);
        }
        for (const auto& a : adjs) {
            int attr = g.add_node(NodeKind::Attribute, a);
            g.add_edge(subject, attr);
            emitted = true;
        }
        i = j + 1;
        return subject;
    }

    void emit_relation(int subject, const std::string& label, int object) {
        int rel = g.add_node(NodeKind::Relationship, label);
        g.add_edge(subject, rel);
        if (object >= 0) g.add_edge(rel, object);
        emitted = true;
    }

    // VERB [PREP] [NP]; returns false if no verb at cursor.
    bool parse_verb_phrase(int subject) {
        if (!at(i, PosTag::Verb)) return false;
        std::string rel = lemmatize_verb(toks[i].text);
        ++i;
        size_t prep_pos = toks.size();
        if (at(i, PosTag::Prep)) prep_pos = i;
        if (prep_pos < toks.size()) {
            rel += " " + toks[prep_pos].text;
            i = prep_pos + 1;
        }
        skip_det();
        int object = parse_np();
        if (object < 0 && prep_pos < toks.size()) {
            // dangling preposition with no object: keep the bare verb
            rel = rel.substr(0, rel.rfind(' '));
        }
        emit_relation(subject, rel, object);
        return true;
    }

    // "with <ADJ? NOUN>" after a verbless subject: one multiword attribute.
    bool parse_with_attribute(int subject) {
        if (!at_text(i, "with")) return false;
        size_t j = i + 1;
        while (at(j, PosTag::Det)) ++j;
        std::vector<std::string> words;
        while (at(j, PosTag::Adj)) words.push_back(toks[j++].text);
        if (!at(j, PosTag::Noun)) return false;
        words.push_back(toks[j].text);
        std::string label = words[0];
        for (size_t k = 1; k < words.size(); ++k) label += " " + words[k];
        int attr = g.add_node(NodeKind::Attribute, label);
        g.add_edge(subject, attr);
        emitted = true;
        i = j + 1;
        return true;
    }

    // "is VERBed by NP" -> agent -> verb -> patient
    bool parse_passive(int patient) {
        if (!(at(i, PosTag::Cop) && at(i + 1, PosTag::Verb) &&
              at_text(i + 2, "by")))
            return false;
        std::string rel = lemmatize_verb(toks[i + 1].text);
        i += 3;
        skip_det();
        int agent = parse_np();
        if (agent < 0) return false;
        int rel_node = g.add_node(NodeKind::Relationship, rel);
        g.add_edge(agent, rel_node);
        g.add_edge(rel_node, patient);
        emitted = true;
        return true;
    }

    bool parse_copular(int subject) {
        if (!at(i, PosTag::Cop)) return false;
        if (at(i + 1, PosTag::Verb)) {
            // progressive: "cat is sitting on a bench"
            ++i;
            return parse_verb_phrase(subject);
        }
        size_t j = i + 1;
        while (at(j, PosTag::Det)) ++j;
        if (at(j, PosTag::Adj)) {
            i = j;
            while (at(i, PosTag::Adj)) {
                int attr = g.add_node(NodeKind::Attribute, toks[i].text);
                g.add_edge(subject, attr);
                emitted = true;
                ++i;
                while (at(i, PosTag::Other)) ++i; // "tall and thin"
            }
            return true;
        }
        if (at(j, PosTag::Prep)) {
            // "man is in the kitchen"
            i = j;
            std::string rel = toks[i].text;
            ++i;
            skip_det();
            int object = parse_np();
            if (object < 0) return false;
            emit_relation(subject, rel, object);
            return true;
        }
        if (at(j, PosTag::Noun)) {
            // copular predicate noun: "man is a chef"
            i = j;
            int attr = g.add_node(NodeKind::Attribute, toks[i].text);
            g.add_edge(subject, attr);
            emitted = true;
            ++i;
            return true;
        }
        return false;
    }

    void run() {
        skip_det();
        head_subject = parse_np();
        if (head_subject < 0) return;
        int subject = head_subject;
        while (i < toks.size()) {
            if (parse_passive(subject)) continue;
            if (parse_copular(subject)) continue;
            if (parse_verb_phrase(subject)) continue;
            // clausal marker: "man that runs"
            if ((at_text(i, "that") || at_text(i, "who") || at_text(i, "which")) &&
                at(i + 1, PosTag::Verb)) {
                ++i;
                parse_verb_phrase(subject);
                continue;
            }
            if (parse_with_attribute(subject)) continue;
            if (at(i, PosTag::Prep)) {
                // bare prepositional phrase: "cat on a bench"
                std::string rel = toks[i].text;
                ++i;
                skip_det();
                int object = parse_np();
                if (object >= 0) {
                    emit_relation(subject, rel, object);
                    continue;
                }
                continue;
            }
            ++i;
        }
    }
};

} // namespace

ParseResult parse_caption(const Tagger& tagger, const std::string& sentence,
                          std::optional<BoundingBox> bbox) {
    ParseResult result;
    auto toks = tagger.tag_tokens(sentence);
    if (toks.empty()) return result;
    CaptionPass pass{toks, result.graph, bbox};
    pass.run();
    if (pass.head_subject < 0) {
        result.graph = SceneGraph{};
        result.diagnostic = "no pattern matched caption: '" + sentence + "'";
    }
    return result;
}

} // namespace sgvq
