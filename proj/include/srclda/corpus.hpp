#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace srclda {

// Word ids are assigned in order of first appearance.
struct Vocabulary {
  std::vector<std::string> words;
  std::unordered_map<std::string, int32_t> index;

  int32_t add(const std::string& word);
  // -1 when absent.
  int32_t find(const std::string& word) const;
  int32_t size() const { return static_cast<int32_t>(words.size()); }
};

struct Document {
  std::vector<int32_t> tokens;
};

struct Corpus {
  Vocabulary vocab;
  std::vector<Document> docs;

  size_t token_count() const;
};

// One document per line, whitespace-separated tokens. Blank lines become
// empty documents (warned on stderr). Missing or empty files are errors.
Corpus load_corpus(const std::filesystem::path& path);

// Inverse of load_corpus: reloading the written file reproduces the same
// documents and the same vocabulary order.
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

// Total occurrences per word id.
std::vector<long long> word_counts(const Corpus& corpus);

}  // namespace srclda
