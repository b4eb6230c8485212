// Copyright 2026 The text2model Authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic tokenizer, rule-based Penn-Treebank tagger, and lemmatizer.

#include <cctype>
#include <map>
#include <set>

#include "t2m/textprep.hpp"
#include "t2m/util.hpp"

#ifndef T2M_DATA_DIR
#define T2M_DATA_DIR "data"
#endif

namespace t2m::textprep {

// ---------- sentence tokenization ----------

static bool is_abbrev(const std::string& before) {
  static const std::set<std::string> abbrevs = {"e.g", "i.e", "fig", "eq",  "mr", "mrs",
                                                "dr",  "no",  "etc", "vs", "al", "cf"};
  // take trailing alphabetic-ish run
  size_t end = before.size();
  size_t start = end;
  while (start > 0 && (std::isalpha((unsigned char)before[start - 1]) || before[start - 1] == '.'))
    --start;
  std::string tok = to_lower(before.substr(start, end - start));
  while (!tok.empty() && tok.back() == '.') tok.pop_back();
  return abbrevs.count(tok) > 0;
}

std::vector<std::string> tokenize_sentences(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    cur.push_back(c);
    if (c == '.' || c == '!' || c == '?') {
      // decimal number: digit . digit
      if (c == '.' && i > 0 && i + 1 < text.size() && std::isdigit((unsigned char)text[i - 1]) &&
          std::isdigit((unsigned char)text[i + 1]))
        continue;
      if (c == '.' && is_abbrev(cur.substr(0, cur.size() - 1))) continue;
      // consume trailing quotes/brackets
      size_t j = i + 1;
      while (j < text.size() && (text[j] == '"' || text[j] == '\'' || text[j] == ')')) {
        cur.push_back(text[j]);
        ++i;
        ++j;
      }
      bool boundary = j >= text.size();
      if (!boundary && std::isspace((unsigned char)text[j])) {
        size_t k = j;
        while (k < text.size() && std::isspace((unsigned char)text[k])) ++k;
        boundary = k >= text.size() || std::isupper((unsigned char)text[k]) ||
                   std::isdigit((unsigned char)text[k]) || text[k] == '"' || text[k] == '(';
      }
      if (boundary) {
        // trim
        size_t a = cur.find_first_not_of(" \t\n");
        if (a != std::string::npos) out.push_back(cur.substr(a, cur.find_last_not_of(" \t\n") - a + 1));
        cur.clear();
      }
    }
  }
  size_t a = cur.find_first_not_of(" \t\n");
  if (a != std::string::npos) out.push_back(cur.substr(a, cur.find_last_not_of(" \t\n") - a + 1));
  return out;
}

// ---------- word tokenization ----------

std::vector<std::string> tokenize_words(const std::string& sentence) {
  std::vector<std::string> out;
  size_t i = 0, n = sentence.size();
  auto alpha = [&](size_t k) { return k < n && std::isalpha((unsigned char)sentence[k]); };
  auto digit = [&](size_t k) { return k < n && std::isdigit((unsigned char)sentence[k]); };
  while (i < n) {
    char c = sentence[i];
    if (std::isspace((unsigned char)c)) {
      ++i;
      continue;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t j = i + 1;
      while (digit(j) || ((sentence[j] == '.' || sentence[j] == ',') && digit(j + 1))) ++j;
      out.push_back(sentence.substr(i, j - i));
      i = j;
      continue;
    }
    if (std::isalpha((unsigned char)c)) {
      size_t j = i + 1;
      while (alpha(j) || (sentence[j] == '-' && alpha(j + 1)) ||
             (sentence[j] == '\'' && alpha(j + 1) &&
              !(sentence[j + 1] == 's' && !alpha(j + 2))))  // keep 's separate
        ++j;
      out.push_back(sentence.substr(i, j - i));
      i = j;
      // possessive clitic
      if (i + 1 < n && sentence[i] == '\'' && sentence[i + 1] == 's' && !alpha(i + 2)) {
        out.push_back("'s");
        i += 2;
      }
      continue;
    }
    out.push_back(std::string(1, c));
    ++i;
  }
  return out;
}

// ---------- lexicons ----------

static const std::set<std::string>& verb_lexicon() {
  static const std::set<std::string> v = {
      "approach",  "weigh",    "cause",     "depend",    "affect",   "attach",   "fix",
      "swing",     "work",     "approximate", "make",    "form",     "rest",     "run",
      "include",   "consist",  "contain",   "comprise",  "move",     "oscillate", "describe",
      "manipulate", "provide", "extend",    "arrange",   "receive",  "bring",    "carry",
      "equip",     "keep",     "tend",      "use",       "bolt",     "clamp",    "connect",
      "mount",     "rotate",   "allow",     "construct", "design",   "enable",   "drive",
      "exert",     "place",    "hold",      "support",   "turn",     "lift",     "propel",
      "balance",   "steer",    "measure",   "vary",      "apply",    "require",  "produce",
      "reduce",    "increase", "act",       "remain",    "operate",  "control",  "generate",
      "transmit",  "convert",  "absorb",    "store",     "release",  "suspend",  "hang",
      "displace",  "stretch",  "compress",  "damp",      "push",     "pull",     "create",
      "determine", "observe",  "show",      "give",      "take",     "obtain",   "follow",
      "result",    "occur",    "travel",    "return",    "begin",    "start",    "stop",
      "compute",   "calculate", "simulate", "derive",    "regulate", "maintain", "prevent",
      "adjust",    "secure",   "rotate",    "incline",   "deflect",  "steady",   "accelerate",
      "burn",      "house",    "transmit",  "resemble",  "involve",  "locate",   "situate"};
  return v;
}

static const std::map<std::string, std::string>& irregular_verbs() {
  static const std::map<std::string, std::string> m = {
      {"made", "make"},   {"brought", "bring"}, {"held", "hold"},   {"hung", "hang"},
      {"gave", "give"},   {"took", "take"},     {"went", "go"},     {"came", "come"},
      {"saw", "see"},     {"said", "say"},      {"found", "find"},  {"kept", "keep"},
      {"built", "build"}, {"drew", "draw"},     {"drove", "drive"}, {"ran", "run"},
      {"swung", "swing"}, {"sent", "send"},     {"met", "meet"},    {"left", "leave"}};
  return m;
}

static const std::set<std::string>& adjective_lexicon() {
  static const std::set<std::string> a = {
      "simple",     "harmonic",  "periodic",  "small",     "inextensible", "maximum",
      "minimum",    "vertical",  "horizontal", "light",    "heavy",        "real",
      "similar",    "several",   "front",     "rear",      "diagonal",     "outer",
      "inner",      "upper",     "lower",     "main",      "key",          "smooth",
      "large",      "long",      "short",     "high",      "low",          "strong",
      "weak",       "rigid",     "flexible",  "steady",    "constant",     "uniform",
      "effective",  "efficient", "common",    "early",     "late",         "new",
      "old",        "whole",     "entire",    "stiff",     "taut",         "slack",
      "free",       "loose",     "tight",     "round",     "flat",         "hollow",
      "solid",      "single",    "double",    "ordinary",  "total"};
  return a;
}

static const std::set<std::string>& spelled_numbers() {
  static const std::set<std::string> n = {
      "one",  "two",   "three", "four",  "five",  "six",    "seven",   "eight",   "nine",
      "ten",  "eleven", "twelve", "twenty", "thirty", "forty", "fifty", "hundred", "thousand"};
  return n;
}

static const std::map<std::string, std::string>& closed_class() {
  static const std::map<std::string, std::string> m = [] {
    std::map<std::string, std::string> t;
    for (const char* w : {"a", "an", "the", "this", "that", "these", "those", "each", "every",
                          "either", "neither", "both", "all", "some", "most", "any", "no",
                          "another", "such"})
      t[w] = "DT";
    for (const char* w :
         {"of",      "in",      "on",      "at",      "by",     "for",     "with",   "from",
          "as",      "into",    "under",   "over",    "about",  "against", "between", "through",
          "during",  "before",  "after",   "above",   "below",  "near",    "upon",   "without",
          "within",  "along",   "across",  "behind",  "beneath", "beside", "toward", "towards",
          "per",     "than",    "until",   "while",   "because", "although", "though", "if",
          "whether", "since",   "like",    "onto"})
      t[w] = "IN";
    for (const char* w : {"and", "or", "but", "nor", "plus"}) t[w] = "CC";
    t["to"] = "TO";
    for (const char* w : {"can", "could", "may", "might", "must", "shall", "should", "will",
                          "would"})
      t[w] = "MD";
    for (const char* w : {"i", "you", "he", "she", "it", "we", "they", "me", "him", "us",
                          "them", "myself", "itself", "themselves", "its", "his", "their",
                          "our", "your", "my", "hers", "her"})
      t[w] = "PRP";
    for (const char* w : {"not", "never", "also", "very", "too", "quite", "rather", "almost",
                          "nearly", "here", "there", "now", "then", "thus", "often", "always",
                          "sometimes", "usually", "soon", "still", "well", "generally", "so",
                          "up", "down", "out", "off", "away", "closely"})
      t[w] = "RB";
    t["more"] = "RBR";
    t["less"] = "RBR";
    t["which"] = "WDT";
    t["what"] = "WP";
    t["who"] = "WP";
    t["when"] = "WRB";
    t["where"] = "WRB";
    t["how"] = "WRB";
    t["why"] = "WRB";
    t["'s"] = "POS";
    // be / have / do
    t["is"] = "VBZ";
    t["am"] = "VBP";
    t["are"] = "VBP";
    t["was"] = "VBD";
    t["were"] = "VBD";
    t["be"] = "VB";
    t["been"] = "VBN";
    t["being"] = "VBG";
    t["has"] = "VBZ";
    t["have"] = "VBP";
    t["had"] = "VBD";
    t["having"] = "VBG";
    t["does"] = "VBZ";
    t["do"] = "VBP";
    t["did"] = "VBD";
    t["done"] = "VBN";
    return t;
  }();
  return m;
}

// ---------- morphology helpers ----------

static bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

// Try to recover a base verb from an inflected form; empty when not a verb.
static std::string verb_base(const std::string& low) {
  const auto& vl = verb_lexicon();
  const auto& irr = irregular_verbs();
  if (vl.count(low)) return low;
  if (auto it = irr.find(low); it != irr.end()) return it->second;
  auto in_lex = [&](const std::string& s) { return vl.count(s) > 0; };
  if (ends_with(low, "ing") && low.size() > 4) {
    std::string stem = low.substr(0, low.size() - 3);
    if (in_lex(stem)) return stem;
    if (in_lex(stem + "e")) return stem + "e";
    if (stem.size() > 2 && stem[stem.size() - 1] == stem[stem.size() - 2] &&
        in_lex(stem.substr(0, stem.size() - 1)))
      return stem.substr(0, stem.size() - 1);
  }
  if (ends_with(low, "ied") && low.size() > 4) {
    std::string stem = low.substr(0, low.size() - 3) + "y";
    if (in_lex(stem)) return stem;
  }
  if (ends_with(low, "ed") && low.size() > 3) {
    std::string stem = low.substr(0, low.size() - 2);
    if (in_lex(stem)) return stem;
    if (in_lex(stem + "e")) return stem + "e";
    if (stem.size() > 2 && stem[stem.size() - 1] == stem[stem.size() - 2] &&
        in_lex(stem.substr(0, stem.size() - 1)))
      return stem.substr(0, stem.size() - 1);
  }
  if (ends_with(low, "ies") && low.size() > 4) {
    std::string stem = low.substr(0, low.size() - 3) + "y";
    if (in_lex(stem)) return stem;
  }
  if (ends_with(low, "es") && low.size() > 3) {
    std::string stem = low.substr(0, low.size() - 2);
    if (in_lex(stem)) return stem;
  }
  if (ends_with(low, "s") && low.size() > 2) {
    std::string stem = low.substr(0, low.size() - 1);
    if (in_lex(stem)) return stem;
  }
  return "";
}

static std::string singularize(const std::string& low) {
  static const std::map<std::string, std::string> irr = {
      {"feet", "foot"}, {"teeth", "tooth"}, {"men", "man"},      {"women", "woman"},
      {"children", "child"}, {"mice", "mouse"}, {"axes", "axis"}, {"radii", "radius"}};
  if (auto it = irr.find(low); it != irr.end()) return it->second;
  if (ends_with(low, "ies") && low.size() > 4) return low.substr(0, low.size() - 3) + "y";
  if (ends_with(low, "sses") || ends_with(low, "xes") || ends_with(low, "zes") ||
      ends_with(low, "ches") || ends_with(low, "shes"))
    return low.substr(0, low.size() - 2);
  if (ends_with(low, "s") && !ends_with(low, "ss") && !ends_with(low, "us") &&
      !ends_with(low, "is") && low.size() > 2)
    return low.substr(0, low.size() - 1);
  return low;
}

// ---------- tagging ----------

static bool is_be_have(const std::string& low) {
  static const std::set<std::string> s = {"is",  "am",  "are",  "was",   "were", "be",
                                          "been", "being", "has", "have", "had", "having"};
  return s.count(low) > 0;
}

std::vector<std::string> pos_tag(const std::vector<std::string>& tokens) {
  std::vector<std::string> tags(tokens.size());
  const auto& cc = closed_class();
  std::string prev_tag, prev_low;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    std::string low = to_lower(tok);
    std::string tag;
    bool has_digit = false, has_alpha = false;
    for (char ch : tok) {
      if (std::isdigit((unsigned char)ch)) has_digit = true;
      if (std::isalpha((unsigned char)ch)) has_alpha = true;
    }
    if (!has_digit && !has_alpha) {
      tag = (tok == "." || tok == "!" || tok == "?") ? "."
            : tok == ","                             ? ","
            : (tok == ":" || tok == ";")             ? ":"
            : (tok == "(")                           ? "-LRB-"
            : (tok == ")")                           ? "-RRB-"
                                                     : "SYM";
    } else if (auto it = cc.find(low); it != cc.end()) {
      tag = it->second;
    } else if (has_digit) {
      tag = "CD";
    } else if (spelled_numbers().count(low)) {
      tag = "CD";
    } else {
      bool nominal_ctx = prev_tag == "DT" || prev_tag == "JJ" || prev_tag == "CD" ||
                         prev_tag == "IN" || prev_tag == "POS" ||
                         (prev_tag == "PRP" &&
                          (prev_low == "its" || prev_low == "his" || prev_low == "their" ||
                           prev_low == "our" || prev_low == "your" || prev_low == "my"));
      const auto& vl = verb_lexicon();
      const auto& irr = irregular_verbs();
      if (vl.count(low) && !nominal_ctx) {
        tag = (prev_tag == "TO" || prev_tag == "MD") ? "VB" : "VBP";
      } else if (irr.count(low) && !nominal_ctx) {
        tag = is_be_have(prev_low) ? "VBN" : "VBD";
      } else if (!verb_base(low).empty() && !nominal_ctx && low != verb_base(low)) {
        if (ends_with(low, "ing"))
          tag = "VBG";
        else if (ends_with(low, "ed"))
          tag = is_be_have(prev_low) || prev_tag == "NN" || prev_tag == "NNS" ? "VBN" : "VBD";
        else
          tag = "VBZ";
      } else if (adjective_lexicon().count(low)) {
        tag = "JJ";
      } else if (ends_with(low, "ly") && low.size() > 3) {
        tag = "RB";
      } else if ((ends_with(low, "al") || ends_with(low, "ic") || ends_with(low, "ous") ||
                  ends_with(low, "ive") || ends_with(low, "able") || ends_with(low, "ible") ||
                  ends_with(low, "less") || ends_with(low, "ful")) &&
                 low.size() > 4 &&
                 ((i + 1 < tokens.size() && std::isalpha((unsigned char)tokens[i + 1][0])) ||
                  is_be_have(prev_low))) {
        tag = "JJ";
      } else if (ends_with(low, "s") && !ends_with(low, "ss") && !ends_with(low, "us") &&
                 !ends_with(low, "is") && low.size() > 3) {
        tag = "NNS";
      } else {
        tag = "NN";
      }
    }
    tags[i] = tag;
    prev_tag = tag;
    prev_low = low;
  }
  return tags;
}

// ---------- lemmatization ----------

std::string lemmatize(const std::string& token, const std::string& tag) {
  std::string low = to_lower(token);
  if (tag.rfind("VB", 0) == 0) {
    if (is_be_have(low)) {
      if (low[0] == 'h') return "have";
      return "be";
    }
    if (low == "does" || low == "did" || low == "done" || low == "doing") return "do";
    std::string base = verb_base(low);
    if (!base.empty()) return base;
    // generic stripping for out-of-lexicon verbs
    if (ends_with(low, "ing") && low.size() > 4) return low.substr(0, low.size() - 3);
    if (ends_with(low, "ies") && low.size() > 4) return low.substr(0, low.size() - 3) + "y";
    if (ends_with(low, "es") && low.size() > 3) return low.substr(0, low.size() - 1);
    if (ends_with(low, "ed") && low.size() > 3) return low.substr(0, low.size() - 2);
    if (ends_with(low, "s") && low.size() > 2) return low.substr(0, low.size() - 1);
    return low;
  }
  if (tag == "NNS" || tag == "NNPS") return singularize(low);
  return low;
}

const std::set<std::string>& stopwords() {
  static const std::set<std::string> sw = [] {
    std::set<std::string> s;
    std::istringstream in(read_file(std::string(T2M_DATA_DIR) + "/stopwords.txt"));
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty()) s.insert(line);
    }
    return s;
  }();
  return sw;
}

}  // namespace t2m::textprep
