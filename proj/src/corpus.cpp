#include <algorithm>

#include "tauber/funcspec.hpp"

namespace tauber {

namespace {

CorpusEntry make_entry(std::string name, std::string source, Classification expected, std::string description) {
  CorpusEntry e;
  e.name = std::move(name);
  e.source = std::move(source);
  e.spec = parse_spec(e.source, e.name);
  e.expected = expected;
  e.description = std::move(description);
  return e;
}

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> corpus;

  Classification all;
  all.slowly_decreasing = true;
  all.slowly_oscillating = true;
  all.l1_summable = true;
  all.statistically_convergent = true;
  all.ordinarily_convergent = true;
  all.limit = all.stat_limit = all.tau_limit = 3.5;
  corpus.push_back(make_entry("C1", "3.5", all, "constant 3.5"));

  Classification s1;
  s1.slowly_decreasing = false;
  s1.l1_summable = true;
  s1.tau_limit = 0.0;
  corpus.push_back(make_entry("S1", "sin(log(x))", s1,
                              "sin(log x): (L,1)-summable to 0, not slowly oscillating, no limit"));

  Classification s2;
  s2.slowly_decreasing = false;
  s2.l1_summable = true;
  s2.statistically_convergent = true;
  s2.stat_limit = 0.0;
  s2.tau_limit = 0.0;
  corpus.push_back(make_entry("S2", "piece [1, 4): 0;\nfamily n from 2: [n^2, n^2 + 1): 1 else 0;", s2,
                              "unit spikes on [n^2, n^2+1), n >= 2: statistical limit 0, no limit"));

  Classification l1;
  l1.slowly_decreasing = true;
  l1.slowly_oscillating = true;
  corpus.push_back(make_entry("L1", "piece [1, e): 0;\npiece [e, inf): loglog(x);", l1,
                              "loglog x: slowly oscillating, drifts to infinity"));

  Classification l2;
  l2.slowly_decreasing = true;
  l2.slowly_oscillating = true;
  corpus.push_back(make_entry("L2", "piece [1, e): 0;\npiece [e, inf): -loglog(x) / log(2);", l2,
                              "-loglog(x)/log 2: drop over (x, x^2] is exactly -1"));

  Classification o1;
  o1.slowly_decreasing = true;
  o1.slowly_oscillating = true;
  corpus.push_back(make_entry("O1", "piece [1, e): 0;\npiece [e, inf): sin(loglog(x));", o1,
                              "sin(loglog x): slowly oscillating, not (L,1)-summable"));

  Classification v1 = all;
  v1.limit = v1.stat_limit = v1.tau_limit = 2.0;
  corpus.push_back(make_entry("V1", "piece [1, e): 2;\npiece [e, inf): 2 + 1 / log(x);", v1,
                              "2 + 1/log x: every limit exists and equals 2"));
  return corpus;
}

}  // namespace

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> corpus = build_corpus();
  return corpus;
}

const CorpusEntry* find_corpus_entry(std::string_view name) {
  const auto& c = builtin_corpus();
  auto it = std::find_if(c.begin(), c.end(), [&](const CorpusEntry& e) { return e.name == name; });
  return it == c.end() ? nullptr : &*it;
}

}  // namespace tauber
