#include "wise/corpus.hpp"

#include <cctype>
#include <cstring>
#include <stdexcept>

#include "wise/rng.hpp"

namespace wise {

namespace {

bool looks_like_url(const std::string& tok) {
    std::string lower = to_lower(tok);
    if (lower.rfind("http://", 0) == 0 || lower.rfind("https://", 0) == 0 ||
        lower.rfind("www.", 0) == 0) {
        return true;
    }
    // Bare domain with a "/" path: letters/digits/dots, a dot before the
    // TLD, then a slash.
    auto slash = tok.find('/');
    if (slash == std::string::npos || slash == 0) return false;
    std::string host = tok.substr(0, slash);
    auto dot = host.rfind('.');
    if (dot == std::string::npos || dot + 2 > host.size()) return false;
    for (unsigned char c : host) {
        if (!std::isalnum(c) && c != '.' && c != '-') return false;
    }
    for (size_t i = dot + 1; i < host.size(); ++i) {
        if (!std::isalpha(static_cast<unsigned char>(host[i]))) return false;
    }
    return host.size() - dot - 1 >= 2;
}

std::string strip_list_markup(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        // Line start: skip whitespace, then bullet/numbering markers.
        size_t j = i;
        while (j < s.size() && (s[j] == ' ' || s[j] == '\t')) ++j;
        size_t k = j;
        while (k < s.size() && (s[k] == '*' || s[k] == '-' || s[k] == '#'))
            ++k;
        if (k == j) {
            // "1." / "1)" numbering
            size_t digits = j;
            while (digits < s.size() &&
                   std::isdigit(static_cast<unsigned char>(s[digits])))
                ++digits;
            if (digits > j && digits < s.size() &&
                (s[digits] == '.' || s[digits] == ')')) {
                k = digits + 1;
            }
        }
        if (k > j && (k >= s.size() || s[k] == ' ' || s[k] == '\t')) {
            out.append(s, i, j - i);
            i = k;
        }
        // Copy the rest of the line.
        while (i < s.size() && s[i] != '\n') {
            // Unicode bullet shows up inside lines too.
            if (s.compare(i, 3, "\xe2\x80\xa2") == 0) {
                i += 3;
                out.push_back(' ');
                continue;
            }
            out.push_back(s[i]);
            ++i;
        }
        if (i < s.size()) {
            out.push_back(' ');  // newline becomes a space
            ++i;
        }
    }
    return out;
}

std::string strip_brackets(const std::string& s, char open, char close) {
    std::string out;
    out.reserve(s.size());
    int depth = 0;
    for (char c : s) {
        if (c == open) {
            ++depth;
        } else if (c == close) {
            if (depth > 0) --depth;  // unmatched closers dropped
        } else if (depth == 0) {
            out.push_back(c);
        }
    }
    return out;
}

std::string strip_urls(const std::string& s) {
    std::vector<std::string> kept;
    for (const auto& tok : split_whitespace(s)) {
        // Trailing punctuation is not part of the URL; a sentence period
        // after a URL must survive so sentence splitting still works.
        size_t core_end = tok.size();
        while (core_end > 0 &&
               std::strchr(".,!?;:", tok[core_end - 1]) != nullptr) {
            --core_end;
        }
        std::string core = tok.substr(0, core_end);
        if (!core.empty() && looks_like_url(core)) {
            if (core_end < tok.size()) kept.push_back(tok.substr(core_end));
        } else {
            kept.push_back(tok);
        }
    }
    return join_tokens(kept);
}

std::string clean_once(const std::string& raw) {
    std::string s = strip_list_markup(raw);
    s = strip_brackets(s, '(', ')');
    s = strip_brackets(s, '[', ']');
    s = strip_urls(s);
    return collapse_whitespace(s);
}

}  // namespace

std::string clean_item(const std::string& raw) {
    // Iterate to a fixpoint so the operation is idempotent even on inputs
    // where one rule exposes material for another.
    std::string cur = clean_once(raw);
    for (int i = 0; i < 4; ++i) {
        std::string next = clean_once(cur);
        if (next == cur) break;
        cur = std::move(next);
    }
    return cur;
}

std::optional<std::string> first_sentence(const std::string& cleaned_item,
                                          const SentenceSplitter& splitter) {
    auto sentences = splitter.split(cleaned_item);
    if (sentences.empty()) return std::nullopt;
    return sentences.front();
}

IngestResult ingest_positives(const std::vector<std::string>& items,
                              const SentenceSplitter& splitter) {
    IngestResult result;
    result.dataset.name = "wikihow-positives";
    for (const auto& item : items) {
        std::string cleaned = clean_item(item);
        if (cleaned.empty()) { ++result.skipped; continue; }
        auto sent = first_sentence(cleaned, splitter);
        if (!sent) { ++result.skipped; continue; }
        auto tokens = tokenize(*sent);
        if (tokens.size() < 3) { ++result.skipped; continue; }
        LabeledSentence s;
        s.text = *sent;
        s.tokens = std::move(tokens);
        s.label = 1;
        s.domain = "wikihow";
        result.dataset.sentences.push_back(std::move(s));
    }
    return result;
}

Dataset ingest_negatives(const std::vector<std::string>& articles, size_t n,
                         const SentenceSplitter& splitter, uint64_t seed) {
    std::vector<std::string> pool;
    for (const auto& article : articles) {
        for (auto& sent : splitter.split(article)) {
            pool.push_back(std::move(sent));
        }
    }
    if (pool.size() < n) {
        throw std::runtime_error(
            "ingest_negatives: need " + std::to_string(n) + " sentences, only " +
            std::to_string(pool.size()) + " available (short by " +
            std::to_string(n - pool.size()) + ")");
    }
    std::vector<size_t> order(pool.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    Dataset d;
    d.name = "wikipedia-negatives";
    for (size_t k = 0; k < n; ++k) {
        LabeledSentence s;
        s.text = pool[order[k]];
        s.tokens = tokenize(s.text);
        s.label = 0;
        s.domain = "wikipedia";
        d.sentences.push_back(std::move(s));
    }
    return d;
}

}  // namespace wise
