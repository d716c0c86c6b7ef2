#include "wise/text.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wise {

namespace {

const char* kDefaultAbbreviations[] = {
    "dr",  "mr",   "mrs",  "ms",  "prof", "sr",   "jr",  "st",
    "etc", "e.g",  "i.e",  "vs",  "inc",  "ltd",  "co",  "corp",
    "fig", "al",   "approx", "dept", "est", "min", "max", "no",
    "vol", "gen",  "rep",  "sen", "gov",  "capt", "sgt", "lt",
    "col", "rev",  "hon",  "univ", "assn", "ave",  "blvd", "rd",
    "jan", "feb",  "mar",  "apr", "jun",  "jul",  "aug", "sep",
    "sept", "oct", "nov",  "dec", "mt",   "ft",   "oz",  "lb",
    "a.m", "p.m",  "u.s",  "u.k",
};

bool is_ascii_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }
bool is_ascii_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_open_quote(unsigned char c) {
    return c == '"' || c == '\'' || c == '`';
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

}  // namespace

std::string to_lower(const std::string& s) {
    std::string out = s;
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string collapse_whitespace(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = true;  // leading whitespace trimmed
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            in_space = true;
        } else {
            if (in_space && !out.empty()) out.push_back(' ');
            out.push_back(static_cast<char>(c));
            in_space = false;
        }
    }
    return out;
}

std::vector<std::string> split_whitespace(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

SentenceSplitter::SentenceSplitter() {
    for (const char* a : kDefaultAbbreviations) abbreviations_.insert(a);
}

void SentenceSplitter::add_abbreviation(const std::string& abbr) {
    std::string a = to_lower(abbr);
    while (!a.empty() && a.back() == '.') a.pop_back();
    if (!a.empty()) abbreviations_.insert(a);
}

void SentenceSplitter::load_abbreviations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open abbreviation list: " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = collapse_whitespace(line);
        if (!line.empty()) add_abbreviation(line);
    }
}

bool SentenceSplitter::is_abbreviation(const std::string& token) const {
    // Token is the word immediately preceding a period, period excluded.
    std::string t = to_lower(token);
    if (t.empty()) return false;
    if (abbreviations_.count(t)) return true;
    // Single letters ("J. Smith") and dotted initialisms ("U.S.") do not
    // end sentences.
    if (t.size() == 1 && std::isalpha(static_cast<unsigned char>(t[0])))
        return true;
    return false;
}

std::vector<std::string> SentenceSplitter::split(const std::string& text) const {
    std::vector<std::string> sentences;
    const std::string s = collapse_whitespace(text);
    size_t start = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (!is_terminator(s[i])) continue;
        // Run of terminators ("?!", "...") ends at the last one.
        size_t end = i;
        while (end + 1 < s.size() && is_terminator(s[end + 1])) ++end;
        // Trailing closing quotes belong to the sentence.
        size_t close = end;
        while (close + 1 < s.size() &&
               (s[close + 1] == '"' || s[close + 1] == '\'')) {
            ++close;
        }
        if (close + 1 >= s.size()) break;  // end of text, flushed below
        if (s[close + 1] != ' ') { i = end; continue; }
        unsigned char next = close + 2 < s.size()
                                 ? static_cast<unsigned char>(s[close + 2])
                                 : 0;
        if (!(is_ascii_upper(next) || is_ascii_digit(next) ||
              is_open_quote(next))) {
            i = end;
            continue;
        }
        if (s[i] == '.' && end == i) {
            // Word before the period; reject boundary after abbreviations.
            size_t w = i;
            while (w > start && s[w - 1] != ' ') --w;
            std::string word = s.substr(w, i - w);
            if (is_abbreviation(word)) { i = end; continue; }
        }
        sentences.push_back(s.substr(start, close + 1 - start));
        start = close + 2;
        i = close + 1;
    }
    if (start < s.size()) sentences.push_back(s.substr(start));
    return sentences;
}

std::vector<std::string> tokenize(const std::string& sentence) {
    std::vector<std::string> tokens;
    const std::string s = to_lower(sentence);
    size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) { ++i; continue; }
        if (std::isalnum(c)) {
            size_t j = i;
            while (j < s.size()) {
                unsigned char cj = static_cast<unsigned char>(s[j]);
                if (std::isalnum(cj)) { ++j; continue; }
                // Keep apostrophes and periods that are word-internal
                // ("don't", "e.g."); clitics are split afterwards.
                if ((cj == '\'' || cj == '.') && j + 1 < s.size() &&
                    std::isalnum(static_cast<unsigned char>(s[j + 1]))) {
                    ++j;
                    continue;
                }
                break;
            }
            std::string word = s.substr(i, j - i);
            // Clitic split: "n't" first, then common contractions.
            auto emit = [&tokens](const std::string& w) {
                if (!w.empty()) tokens.push_back(w);
            };
            if (word.size() > 3 && word.compare(word.size() - 3, 3, "n't") == 0) {
                emit(word.substr(0, word.size() - 3));
                emit("n't");
            } else {
                static const char* clitics[] = {"'s", "'re", "'ve", "'ll",
                                                "'d", "'m"};
                bool done = false;
                for (const char* cl : clitics) {
                    size_t n = std::strlen(cl);
                    if (word.size() > n &&
                        word.compare(word.size() - n, n, cl) == 0) {
                        emit(word.substr(0, word.size() - n));
                        emit(cl);
                        done = true;
                        break;
                    }
                }
                if (!done) emit(word);
            }
            i = j;
        } else {
            tokens.push_back(std::string(1, s[i]));
            ++i;
        }
    }
    return tokens;
}

}  // namespace wise
