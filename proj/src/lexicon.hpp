#pragma once

#include <map>
#include <set>
#include <string>

#include "caption_parser.hpp"

namespace sgvq::lexicon {

// Embedded POS table covering the fixture vocabulary.
const std::map<std::string, PosTag>& embedded();

// past / participle form -> base form
const std::map<std::string, std::string>& irregular_verbs();

// stems that take back a silent e after -ing/-ed stripping (driv -> drive)
const std::set<std::string>& restore_e_stems();

// words whose trailing double consonant is not an inflection artifact
const std::set<std::string>& keep_double_stems();

// base verb forms, exempt from suffix stripping (feed, need, ...)
const std::set<std::string>& base_verbs();

} // namespace sgvq::lexicon
