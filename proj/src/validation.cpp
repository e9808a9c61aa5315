#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "vsplit/census.hpp"
#include "vsplit/dg_format.hpp"
#include "vsplit/errors.hpp"
#include "vsplit/expansion.hpp"
#include "vsplit/predicates.hpp"

namespace vsplit {
namespace {

enum CheckIndex : std::size_t {
  kPositive,
  kNegative,
  kClasp,
  kSoloist,
  kInducing,
  kCompression,
  kTransfer,
  kConservation,
  kAcyclic,
  kCheckCount
};

constexpr std::array<const char*, kCheckCount> kNames = {
    check::kMainPositive,        check::kMainNegative,       check::kClaspSoloist,
    check::kSoloistLemma,        check::kTransitiveInducing, check::kCompressionTheorem,
    check::kLockedClaspTransfer, check::kArrowConservation,  check::kAcyclicCorollary};

// Checks that only establish consistency over a finite search window.
constexpr std::array<bool, kCheckCount> kBounded = {false, true,  false, false, false,
                                                    false, false, false, true};

// The negative direction and the oracle half of the acyclic check are run
// on graphs up to this size, with this many extra vertices.
constexpr std::size_t kOracleGraphLimit = 4;
constexpr std::size_t kOracleExtra = 3;
// split_vertex maps are generated exhaustively up to this size.
constexpr std::size_t kSplitGraphLimit = 4;

struct Tally {
  std::uint64_t instances = 0;
  std::optional<std::size_t> fail_index;
  std::optional<DiGraph> counterexample;
  std::string detail;
};

using Tallies = std::array<Tally, kCheckCount>;

// Acyclic members of the balanced, stable-given-balanced and
// unlocked-given-stable obstruction sets, capped at n vertices.
const std::vector<DiGraph>& acyclic_obstructions(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<DiGraph>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  std::vector<DiGraph> out;
  const std::pair<ObstructionPredicate, std::size_t> searches[] = {
      {ObstructionPredicate::Balanced, 4},
      {ObstructionPredicate::StableGivenBalanced, 4},
      {ObstructionPredicate::UnlockedGivenStable, kMaxObstructionVertices}};
  for (auto [predicate, bound] : searches) {
    const std::size_t cap = std::min(bound, n);
    if (cap == 0) continue;
    for (DiGraph& g : minimal_obstructions(predicate, cap).classes)
      if (is_star_acyclic(g)) out.push_back(std::move(g));
  }
  return cache.emplace(n, std::move(out)).first->second;
}

std::optional<std::string> soloist_lemma_violation(const DiGraph& g, std::uint64_t& instances) {
  const std::size_t n = g.size();
  auto arrow = [&](Vertex p, Vertex q) { return g.has_arrow(p, q); };
  auto trans = [&](Vertex p, Vertex q, Vertex r) { return arrow(p, q) && arrow(q, r) && arrow(p, r); };
  auto name = [&](Vertex v) { return g.label(v); };
  for (Vertex s : soloists(g)) {
    for (Vertex p = 0; p < n; ++p) {
      if (p == s) continue;
      for (Vertex q = 0; q < n; ++q) {
        if (q == s) continue;
        // Part 1: (a, b, s) with a = p, b = q.
        if (p != q && trans(p, q, s)) {
          for (Vertex v = 0; v < n; ++v) {
            if (arrow(s, v)) {
              ++instances;
              if (arrow(p, v) != arrow(q, v))
                return "1(a) fails at s=" + name(s) + " a=" + name(p) + " b=" + name(q) + " c=" + name(v);
            }
            if (arrow(v, p)) {
              ++instances;
              if (arrow(v, s) != arrow(v, q))
                return "1(b) fails at s=" + name(s) + " a=" + name(p) + " b=" + name(q) + " x=" + name(v);
            }
          }
        }
        // Part 2: (a, s, c) with a = p, c = q.
        if (trans(p, s, q)) {
          for (Vertex v = 0; v < n; ++v) {
            if (arrow(v, p)) {
              ++instances;
              if (arrow(v, q) != arrow(v, s))
                return "2(a) fails at s=" + name(s) + " a=" + name(p) + " c=" + name(q) + " x=" + name(v);
            }
            if (arrow(q, v)) {
              ++instances;
              if (arrow(p, v) != arrow(s, v))
                return "2(b) fails at s=" + name(s) + " a=" + name(p) + " c=" + name(q) + " d=" + name(v);
            }
          }
        }
        // Part 3: (s, b, c) with b = p, c = q.
        if (p != q && trans(s, p, q)) {
          for (Vertex v = 0; v < n; ++v) {
            if (arrow(q, v)) {
              ++instances;
              if (arrow(p, v) != arrow(s, v))
                return "3(a) fails at s=" + name(s) + " b=" + name(p) + " c=" + name(q) + " d=" + name(v);
            }
            if (arrow(v, s)) {
              ++instances;
              if (arrow(v, p) != arrow(v, q))
                return "3(b) fails at s=" + name(s) + " b=" + name(p) + " c=" + name(q) + " a=" + name(v);
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

class GraphChecker {
 public:
  GraphChecker(Tallies& tallies, std::size_t index, const DiGraph& g,
               const std::vector<DiGraph>& obstructions)
      : tallies_(tallies), index_(index), g_(g), obstructions_(obstructions) {}

  void run() {
    stable_ = is_stable(g_);
    locked_ = stable_ && has_locked_clasp(g_);
    if (stable_) {
      check_clasps();
      check_soloists();
      if (!locked_) check_positive();
      if (locked_ && g_.size() <= kOracleGraphLimit) check_negative();
    }
    if (g_.size() <= kSplitGraphLimit) check_splits();
    if (is_star_acyclic(g_)) check_acyclic();
  }

 private:
  void count(CheckIndex c, std::uint64_t k = 1) { tallies_[c].instances += k; }

  void fail(CheckIndex c, std::string detail) {
    Tally& t = tallies_[c];
    if (t.fail_index && *t.fail_index <= index_) return;
    t.fail_index = index_;
    t.counterexample = g_;
    t.detail = std::move(detail);
  }

  void check_clasps() {
    const auto solo = soloists(g_);
    for (const ClaspRecord& rec : clasps(g_)) {
      count(kClasp);
      if (!std::binary_search(solo.begin(), solo.end(), rec.vertex))
        fail(kClasp, "clasp " + g_.label(rec.vertex) + " is not a soloist");
    }
  }

  void check_soloists() {
    std::uint64_t instances = 0;
    auto violation = soloist_lemma_violation(g_, instances);
    count(kSoloist, instances);
    if (violation) fail(kSoloist, *violation);
  }

  void check_map(const CompressionMap& map, const std::string& origin) {
    count(kInducing);
    if (auto v = transitive_inducing_violation(map)) fail(kInducing, origin + ": " + *v);
    count(kCompression);
    if (auto v = compression_theorem_violation(map)) fail(kCompression, origin + ": " + *v);
    if (is_stable(map.source())) {
      count(kTransfer);
      if (auto v = locked_transfer_violation(map)) fail(kTransfer, origin + ": " + *v);
    }
  }

  void check_positive() {
    count(kPositive);
    count(kConservation);
    try {
      const ExpansionOutcome out = expand_to_preorder(g_);
      if (out.trace.size() > iteration_cap(g_))
        fail(kPositive, "iteration cap exceeded");
      else if (!is_preordered(out.result))
        fail(kPositive, "result is not preordered");
      else if (!is_stable(out.result))
        fail(kPositive, "result is not stable");
      else if (!is_valid(verify_compression(out.map)))
        fail(kPositive, "composite map does not verify");
      if (out.result.star_arrow_count() != g_.star_arrow_count())
        fail(kConservation, "non-loop arrow count changed from " + std::to_string(g_.star_arrow_count()) +
                                " to " + std::to_string(out.result.star_arrow_count()));
      for (std::size_t i = 0; i < out.steps.size(); ++i)
        check_map(out.steps[i], "expansion step " + std::to_string(i + 1));
      check_map(out.map, "composite expansion map");
    } catch (const Error& e) {
      fail(kPositive, std::string("expand_to_preorder failed: ") + e.what());
    }
  }

  void check_negative() {
    count(kNegative);
    if (auto hit = oracle_preorder_expansion(g_, kOracleExtra))
      fail(kNegative, "oracle found a preordered expansion with " + std::to_string(hit->first.size()) +
                          " vertices despite a locked clasp");
  }

  void check_splits() {
    for (Vertex x = 0; x < g_.size(); ++x) {
      std::vector<Vertex> ins;
      std::vector<Vertex> outs;
      for (Vertex v = 0; v < g_.size(); ++v) {
        if (v == x) continue;
        if (g_.has_arrow(v, x)) ins.push_back(v);
        if (g_.has_arrow(x, v)) outs.push_back(v);
      }
      const std::string label = fresh_vertex_label(g_);
      for (std::uint32_t im = 0; im < (1U << ins.size()); ++im)
        for (std::uint32_t om = 0; om < (1U << outs.size()); ++om) {
          std::vector<Vertex> in_moved;
          std::vector<Vertex> out_moved;
          for (std::size_t i = 0; i < ins.size(); ++i)
            if ((im >> i) & 1U) in_moved.push_back(ins[i]);
          for (std::size_t i = 0; i < outs.size(); ++i)
            if ((om >> i) & 1U) out_moved.push_back(outs[i]);
          try {
            auto [h, map] = split_vertex(g_, x, in_moved, out_moved, label);
            check_map(map, "split of " + g_.label(x));
          } catch (const InvalidSplit&) {
          }
        }
    }
  }

  void check_acyclic() {
    count(kAcyclic);
    const bool obstructed = contains_induced(g_, obstructions_);
    const bool expandable = stable_ && !locked_;
    if (!obstructed && !expandable) {
      fail(kAcyclic, "no induced obstruction, yet the graph is not stable with unlocked clasps");
      return;
    }
    if (obstructed && expandable) {
      fail(kAcyclic, "contains an induced obstruction, yet the expansion algorithm applies");
      return;
    }
    if (obstructed && g_.size() <= kOracleGraphLimit && oracle_preorder_expansion(g_, kOracleExtra))
      fail(kAcyclic, "contains an induced obstruction, yet the oracle finds a preordered expansion");
  }

  Tallies& tallies_;
  std::size_t index_;
  const DiGraph& g_;
  const std::vector<DiGraph>& obstructions_;
  bool stable_ = false;
  bool locked_ = false;
};

ValidationReport assemble(std::size_t n_max, std::vector<std::uint64_t> classes_per_n,
                          const Tallies& tallies) {
  ValidationReport report;
  report.n_max = n_max;
  report.classes_per_n = std::move(classes_per_n);
  for (std::size_t c = 0; c < kCheckCount; ++c) {
    CheckResult r;
    r.name = kNames[c];
    r.instances = tallies[c].instances;
    r.bounded = kBounded[c];
    r.passed = !tallies[c].fail_index.has_value();
    r.counterexample = tallies[c].counterexample;
    r.detail = tallies[c].detail;
    report.checks.push_back(std::move(r));
  }
  return report;
}

void merge_into(Tallies& into, const Tallies& from) {
  for (std::size_t c = 0; c < kCheckCount; ++c) {
    into[c].instances += from[c].instances;
    if (from[c].fail_index && (!into[c].fail_index || *from[c].fail_index < *into[c].fail_index)) {
      into[c].fail_index = from[c].fail_index;
      into[c].counterexample = from[c].counterexample;
      into[c].detail = from[c].detail;
    }
  }
}

std::string names_of(const DiGraph& g, const std::vector<Vertex>& vs) {
  std::string out;
  for (Vertex v : vs) out += (out.empty() ? "" : ",") + g.label(v);
  return out;
}

}  // namespace

std::optional<std::string> transitive_inducing_violation(const CompressionMap& map) {
  const DiGraph& src = map.source();
  const DiGraph& tgt = map.target();
  for (Vertex x = 0; x < src.size(); ++x)
    for (Vertex y = 0; y < src.size(); ++y) {
      if (!src.has_arrow(x, y)) continue;
      for (Vertex z = 0; z < src.size(); ++z)
        if (src.has_arrow(y, z) && !src.has_arrow(x, z) && is_trans_triple(tgt, {map(x), map(y), map(z)}))
          return "(" + names_of(src, {x, y, z}) + ") has xy, yz over a transitive triple but no xz";
    }
  return std::nullopt;
}

std::optional<std::string> compression_theorem_violation(const CompressionMap& map) {
  const DiGraph& src = map.source();
  const DiGraph& tgt = map.target();
  if (is_balanced(tgt) && !is_balanced(src)) return "target balanced, source not balanced";
  if (is_stable(tgt) && !is_stable(src)) return "target stable, source not stable";
  if (is_preordered(tgt) && !is_preordered(src)) return "target preordered, source not preordered";
  return std::nullopt;
}

std::optional<std::string> locked_transfer_violation(const CompressionMap& map) {
  if (!is_stable(map.source())) return std::nullopt;
  const bool src = has_locked_clasp(map.source());
  const bool tgt = has_locked_clasp(map.target());
  if (src == tgt) return std::nullopt;
  return src ? "source has a locked clasp, target has none" : "target has a locked clasp, source has none";
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const CheckResult& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ValidationReport validate_theorems(std::size_t n_max, unsigned jobs) {
  if (n_max < 1 || n_max > kMaxObstructionVertices)
    throw BoundExceeded("validation supports 1 to " + std::to_string(kMaxObstructionVertices) +
                        " vertices, got " + std::to_string(n_max));
  jobs = std::max(1U, jobs);
  std::vector<std::pair<std::size_t, std::uint64_t>> work;
  std::vector<std::uint64_t> classes_per_n;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto& codes = iso_class_codes(n);
    classes_per_n.push_back(codes.size());
    for (std::uint64_t code : codes) work.emplace_back(n, code);
  }
  const auto& obstructions = acyclic_obstructions(n_max);

  std::vector<Tallies> partial(jobs);
  auto worker = [&](unsigned w) {
    for (std::size_t i = w; i < work.size(); i += jobs) {
      const DiGraph g = graph_from_code(work[i].first, work[i].second);
      GraphChecker(partial[w], i, g, obstructions).run();
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& t : threads) t.join();
  }
  Tallies total;
  for (const Tallies& t : partial) merge_into(total, t);
  return assemble(n_max, std::move(classes_per_n), total);
}

ValidationReport validate_graph(const DiGraph& g) {
  if (auto v = missing_loop(g)) throw NotReflexive("not reflexive: missing loop at " + g.label(*v));
  Tallies tallies;
  GraphChecker(tallies, 0, g, acyclic_obstructions(g.size())).run();
  return assemble(g.size(), {}, tallies);
}

bool replay_counterexample(const CheckResult& result) {
  if (!result.counterexample) return false;
  const ValidationReport again = validate_graph(*result.counterexample);
  const CheckResult* c = again.find(result.name);
  return c != nullptr && !c->passed;
}

nlohmann::ordered_json report_to_json(const ValidationReport& report) {
  nlohmann::ordered_json doc;
  doc["n_max"] = report.n_max;
  doc["classes_per_n"] = report.classes_per_n;
  doc["all_passed"] = report.all_passed();
  auto checks = nlohmann::ordered_json::array();
  for (const CheckResult& c : report.checks) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["instances"] = c.instances;
    j["kind"] = c.bounded ? "bounded consistency" : "exhaustive";
    j["detail"] = c.detail;
    j["counterexample"] = c.counterexample ? nlohmann::ordered_json(emit_digraph(*c.counterexample))
                                           : nlohmann::ordered_json(nullptr);
    checks.push_back(std::move(j));
  }
  doc["checks"] = std::move(checks);
  return doc;
}

std::string report_to_text(const ValidationReport& report) {
  std::ostringstream out;
  std::uint64_t scanned = 0;
  std::string per_n;
  for (std::uint64_t k : report.classes_per_n) {
    scanned += k;
    per_n += (per_n.empty() ? "" : ", ") + std::to_string(k);
  }
  out << "census: n <= " << report.n_max << ", " << scanned << " iso classes scanned";
  if (!per_n.empty()) out << " (" << per_n << ")";
  out << "\n";
  for (const CheckResult& c : report.checks) {
    out << c.name << ": " << (c.passed ? "PASS" : "FAIL") << " (" << c.instances << " instances"
        << (c.bounded ? ", bounded consistency" : "") << ")\n";
    if (!c.passed) {
      out << "  " << c.detail << "\n";
      if (c.counterexample) {
        std::istringstream lines(emit_digraph(*c.counterexample));
        for (std::string line; std::getline(lines, line);) out << "  | " << line << "\n";
      }
    }
  }
  out << (report.all_passed() ? "all checks passed" : "some checks failed") << "\n";
  return out.str();
}

}  // namespace vsplit
