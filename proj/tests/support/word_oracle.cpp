#include "support/word_oracle.hpp"

#include <map>
#include <string>

namespace arrowpoly::testing {

namespace {

std::string canonical_cyclic(const std::vector<CuspSide>& word) {
  if (word.empty()) return {};
  std::string linear;
  for (CuspSide s : word) linear += s == CuspSide::L ? 'L' : 'R';
  std::string best = linear;
  for (std::size_t i = 1; i < linear.size(); ++i) {
    best = std::min(best, linear.substr(i) + linear.substr(0, i));
  }
  return best;
}

std::vector<std::vector<CuspSide>> deletions(const std::vector<CuspSide>& word) {
  std::vector<std::vector<CuspSide>> out;
  const std::size_t n = word.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (n >= 2 && word[i] == word[j] && (n > 2 || i < j)) {
      std::vector<CuspSide> next;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i && k != j) next.push_back(word[k]);
      }
      out.push_back(std::move(next));
    }
  }
  return out;
}

void explore(const std::vector<CuspSide>& word,
             std::map<std::string, bool>& seen, std::set<int>& terminal) {
  const std::string key = canonical_cyclic(word);
  if (seen.count(key)) return;
  seen[key] = true;
  const auto next = deletions(word);
  if (next.empty()) {
    terminal.insert(static_cast<int>(word.size()));
    return;
  }
  for (const auto& w : next) explore(w, seen, terminal);
}

}  // namespace

std::set<int> exhaustive_reduction_lengths(const std::vector<CuspSide>& word) {
  std::map<std::string, bool> seen;
  std::set<int> terminal;
  explore(word, seen, terminal);
  return terminal;
}

int random_strategy_reduce(std::vector<CuspSide> word, std::mt19937_64& rng) {
  while (true) {
    std::vector<std::size_t> candidates;
    const std::size_t n = word.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      if (n >= 2 && word[i] == word[j] && (n > 2 || i < j)) candidates.push_back(i);
    }
    if (candidates.empty()) return static_cast<int>(word.size());
    const std::size_t i =
        candidates[std::uniform_int_distribution<std::size_t>(
            0, candidates.size() - 1)(rng)];
    const std::size_t j = (i + 1) % word.size();
    std::vector<CuspSide> next;
    for (std::size_t k = 0; k < word.size(); ++k) {
      if (k != i && k != j) next.push_back(word[k]);
    }
    word = std::move(next);
  }
}

std::vector<CuspSide> random_cyclic_word(int max_len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len_dist(0, max_len / 2);
  const int len = 2 * len_dist(rng);
  std::vector<CuspSide> word;
  for (int i = 0; i < len; ++i) {
    word.push_back(rng() % 2 ? CuspSide::L : CuspSide::R);
  }
  return word;
}

}  // namespace arrowpoly::testing
