#include "srclda/corpus.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace srclda {

int32_t Vocabulary::add(const std::string& word) {
  auto it = index.find(word);
  if (it != index.end()) return it->second;
  int32_t id = size();
  index.emplace(word, id);
  words.push_back(word);
  return id;
}

int32_t Vocabulary::find(const std::string& word) const {
  auto it = index.find(word);
  return it == index.end() ? -1 : it->second;
}

size_t Corpus::token_count() const {
  size_t n = 0;
  for (const auto& d : docs) n += d.tokens.size();
  return n;
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path.string());
  Corpus corpus;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    Document doc;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) doc.tokens.push_back(corpus.vocab.add(tok));
    if (doc.tokens.empty())
      std::cerr << "[srclda] warning: " << path.string() << ":" << line_no
                << ": blank line, kept as empty document\n";
    corpus.docs.push_back(std::move(doc));
  }
  if (corpus.docs.empty())
    throw std::runtime_error("corpus file is empty: " + path.string());
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path.string());
  for (const auto& doc : corpus.docs) {
    for (size_t i = 0; i < doc.tokens.size(); ++i) {
      if (i) out << ' ';
      out << corpus.vocab.words[doc.tokens[i]];
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing corpus file: " + path.string());
}

std::vector<long long> word_counts(const Corpus& corpus) {
  std::vector<long long> counts(corpus.vocab.size(), 0);
  for (const auto& doc : corpus.docs)
    for (int32_t w : doc.tokens) ++counts[w];
  return counts;
}

}  // namespace srclda
