#pragma once

#include <string>
#include <unordered_set>
#include <vector>

namespace wise {

// Rule-based sentence boundary detection. Boundaries occur at '.', '!'
// or '?' followed by whitespace and an uppercase letter, digit or opening
// quote, except when the period terminates a known abbreviation.
class SentenceSplitter {
public:
    SentenceSplitter();  // built-in abbreviation table

    // One abbreviation per line, '#' comments allowed. Entries are added
    // to (not replacing) the built-in table.
    void load_abbreviations(const std::string& path);
    void add_abbreviation(const std::string& abbr);

    std::vector<std::string> split(const std::string& text) const;

private:
    bool is_abbreviation(const std::string& token) const;
    std::unordered_set<std::string> abbreviations_;
};

// Lowercased word tokens; punctuation split off; contractions split at
// the clitic ("don't" -> "do", "n't"; "it's" -> "it", "'s").
std::vector<std::string> tokenize(const std::string& sentence);

// Whitespace helpers shared across modules.
std::string collapse_whitespace(const std::string& s);
std::string to_lower(const std::string& s);
std::vector<std::string> split_whitespace(const std::string& s);
std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace wise
