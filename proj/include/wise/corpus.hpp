#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wise/dataset.hpp"
#include "wise/text.hpp"

namespace wise {

// Strips URLs, bracketed spans (parentheses and square brackets, outermost
// span when nested) and embedded list markup from one tips/warnings item,
// then collapses whitespace. Idempotent.
std::string clean_item(const std::string& raw);

// First sentence of a cleaned item, or nullopt when the splitter finds none.
std::optional<std::string> first_sentence(const std::string& cleaned_item,
                                          const SentenceSplitter& splitter);

struct IngestResult {
    Dataset dataset;
    size_t skipped = 0;  // dropped items (empty after cleaning, too short)
};

// Tips/warnings items -> positives (label=1, domain="wikihow"). Each item
// is cleaned, truncated to its first sentence and tokenized; items whose
// first sentence has fewer than 3 tokens are dropped.
IngestResult ingest_positives(const std::vector<std::string>& items,
                              const SentenceSplitter& splitter);

// Encyclopedic article text -> n negatives (label=0, domain="wikipedia"),
// drawn uniformly without replacement, deterministic given seed.
Dataset ingest_negatives(const std::vector<std::string>& articles, size_t n,
                         const SentenceSplitter& splitter, uint64_t seed);

}  // namespace wise
