#include "lexicon.hpp"

namespace sgvq::lexicon {

namespace {

const char* kNouns[] = {
    "man",       "woman",     "cat",      "dog",      "bench",   "kitchen",
    "suit",      "tie",       "hat",      "pizza",    "table",   "hair",
    "shirt",     "jacket",    "t-shirt",  "ball",     "boy",     "girl",
    "child",     "baby",      "car",      "house",    "room",    "door",
    "window",    "chair",     "sofa",     "couch",    "bed",     "food",
    "bottle",    "jar",       "beer",     "water",    "cup",     "glass",
    "plate",     "bowl",      "knife",    "fork",     "spoon",   "pan",
    "pot",       "stove",     "oven",     "counter",  "sink",    "bread",
    "cake",      "egg",       "cheese",   "apple",    "banana",  "orange",
    "tree",      "grass",     "park",     "street",   "road",    "building",
    "sign",      "bag",       "phone",    "book",     "computer", "screen",
    "camera",    "light",     "lamp",     "wall",     "floor",   "ceiling",
    "shelf",     "restaurant", "bar",     "store",    "shop",    "garden",
    "yard",      "fence",     "bird",     "horse",    "fish",    "mouse",
    "person",    "people",    "hand",     "head",     "face",    "eye",
    "arm",       "leg",       "foot",     "shoe",     "sock",    "pants",
    "jeans",     "dress",     "skirt",    "coat",     "scarf",   "glove",
    "glasses",   "bicycle",   "bike",     "bus",      "train",   "plane",
    "boat",      "beach",     "ocean",    "mountain", "sky",     "cloud",
    "sun",       "moon",      "star",     "rain",     "snow",    "flower",
    "plant",     "leaf",      "branch",   "guitar",   "piano",   "stage",
    "crowd",     "microphone", "bottle",  "napkin",   "tray",    "menu",
    "waiter",    "chef",      "salad",    "soup",     "rice",    "meat",
    "chicken",   "onion",     "tomato",   "carrot",   "pepper",  "salt",
    "sugar",     "flour",     "butter",   "milk",     "juice",   "coffee",
    "tea",       "home",      "office",   "school",   "field",   "pool",
};

const char* kVerbs[] = {
    "sit",   "eat",    "play",  "wear",  "throw", "feed",  "run",   "walk",
    "hold",  "drive",  "ride",  "jump",  "stand", "cook",  "cut",   "pour",
    "mix",   "bake",   "drink", "read",  "write", "watch", "talk",  "sing",
    "dance", "sleep",  "fly",   "swim",  "catch", "kick",  "open",  "close",
    "carry", "wash",   "clean", "chase", "climb", "fall",  "point", "wave",
    "push",  "pull",   "serve", "chop",  "stir",  "fry",   "boil",  "grill",
    "taste", "bite",   "hug",   "laugh", "shout", "speak", "listen", "sell",
    "buy",   "pay",    "give",  "take",  "make",  "build", "break", "fix",
    "paint", "draw",   "slice", "smile", "use",   "live",  "go",    "come",
    // irregular past / participle forms, resolved by lemmatize_verb
    "ate",   "sat",    "wore",  "ran",   "threw", "fed",   "held",  "drove",
    "rode",  "stood",  "drank", "sang",  "slept", "flew",  "swam",  "caught",
    "fell",  "gave",   "took",  "made",  "built", "broke", "bought", "sold",
    "paid",  "spoke",  "wrote", "went",  "came",  "eaten", "worn",  "thrown",
    "driven", "ridden", "given", "taken", "written", "broken",
};

const char* kAdjs[] = {
    "tall",   "short",  "thin",   "fat",    "brown",  "black",  "white",
    "red",    "blue",   "green",  "yellow", "long",   "big",    "small",
    "large",  "little", "old",    "young",  "happy",  "sad",    "smiling",
    "angry",  "pretty", "beautiful", "ugly", "dark",  "bright", "dirty",
    "new",    "wet",    "dry",    "hot",    "cold",   "warm",   "round",
    "square", "wooden", "metal",  "plastic", "striped", "plaid", "furry",
    "fluffy", "cute",   "tiny",   "huge",   "empty",  "full",   "fresh",
    "two",    "three",  "four",   "five",   "several", "many",  "gray",
    "pink",   "purple", "golden", "silver", "curly",  "straight",
};

const char* kPreps[] = {
    "in",     "on",      "at",     "with",   "by",      "under",  "over",
    "near",   "behind",  "above",  "below",  "beside",  "between", "inside",
    "outside", "across", "along",  "around", "of",      "to",     "from",
    "into",   "onto",    "against",
};

const char* kDets[] = {
    "a",   "an",  "the",  "this",  "that", "these", "those", "his",
    "her", "its", "their", "my",   "your", "our",   "some",  "any",
};

const char* kCops[] = {
    "is", "are", "was", "were", "be", "been", "being", "am", "seems", "looks",
};

const char* kOther[] = {
    "and",  "or",    "but",   "not",   "no",     "very",  "do",   "does",
    "did",  "what",  "where", "who",   "which",  "when",  "why",  "how",
    "there", "here", "it",    "he",    "she",    "they",  "as",   "so",
    "than", "then",  "also",  "just",  "only",   "while", "before", "after",
};

std::map<std::string, PosTag> build_lexicon() {
    std::map<std::string, PosTag> lex;
    for (const char* w : kNouns) lex[w] = PosTag::Noun;
    for (const char* w : kVerbs) lex[w] = PosTag::Verb;
    for (const char* w : kAdjs) lex[w] = PosTag::Adj;
    for (const char* w : kPreps) lex[w] = PosTag::Prep;
    for (const char* w : kDets) lex[w] = PosTag::Det;
    for (const char* w : kCops) lex[w] = PosTag::Cop;
    for (const char* w : kOther) lex[w] = PosTag::Other;
    return lex;
}

} // namespace

const std::map<std::string, PosTag>& embedded() {
    static const std::map<std::string, PosTag> lex = build_lexicon();
    return lex;
}

const std::map<std::string, std::string>& irregular_verbs() {
    static const std::map<std::string, std::string> m = {
        {"ate", "eat"},     {"eaten", "eat"},   {"sat", "sit"},
        {"wore", "wear"},   {"worn", "wear"},   {"ran", "run"},
        {"threw", "throw"}, {"thrown", "throw"}, {"fed", "feed"},
        {"held", "hold"},   {"drove", "drive"}, {"driven", "drive"},
        {"rode", "ride"},   {"ridden", "ride"}, {"stood", "stand"},
        {"drank", "drink"}, {"sang", "sing"},   {"slept", "sleep"},
        {"flew", "fly"},    {"swam", "swim"},   {"caught", "catch"},
        {"fell", "fall"},   {"gave", "give"},   {"given", "give"},
        {"took", "take"},   {"taken", "take"},  {"made", "make"},
        {"built", "build"}, {"broke", "break"}, {"broken", "break"},
        {"bought", "buy"},  {"sold", "sell"},   {"paid", "pay"},
        {"spoke", "speak"}, {"wrote", "write"}, {"written", "write"},
        {"went", "go"},     {"came", "come"},
    };
    return m;
}

const std::set<std::string>& restore_e_stems() {
    static const std::set<std::string> s = {
        "driv", "tak",  "mak",  "smil", "writ", "danc", "com",  "hav",
        "rid",  "giv",  "serv", "tast", "wav",  "chas", "clos", "bak",
        "bit",  "slic", "us",   "liv",
    };
    return s;
}

const std::set<std::string>& keep_double_stems() {
    static const std::set<std::string> s = {
        "fall", "tell", "sell", "roll",  "pull",  "call",  "yell", "fill",
        "spill", "smell", "spell", "kiss", "miss", "pass", "toss", "press",
        "dress", "grill", "buzz", "add",
    };
    return s;
}

const std::set<std::string>& base_verbs() {
    static const std::set<std::string> s = [] {
        std::set<std::string> out;
        for (const auto& [w, t] : embedded())
            if (t == PosTag::Verb && !irregular_verbs().count(w)) out.insert(w);
        return out;
    }();
    return s;
}

} // namespace sgvq::lexicon
