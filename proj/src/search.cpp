#include "scalescope/search.hpp"

#include "scalescope/entropy.hpp"
#include "scalescope/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace scalescope {
namespace {

constexpr double h_epsilon = 1e-12;

using Engine = std::mt19937_64;

Engine make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Engine(seq);
}

// Engine output is fixed by the standard; the distributions are not, so the
// two helpers below keep runs identical across standard libraries.
std::size_t uniform_index(Engine& rng, std::size_t n) { return rng() % n; }

double uniform_unit(Engine& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <typename T>
void shuffle(std::vector<T>& v, Engine& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

// Fenwick tree over cut indicators at positions 0..n.
class CutIndex {
public:
  explicit CutIndex(const std::vector<std::size_t>& boundaries)
      : cut_(boundaries.back() + 1, false), tree_(boundaries.back() + 2, 0) {
    for (std::size_t b : boundaries) set(b, true);
    top_bit_ = 1;
    while (top_bit_ * 2 < tree_.size()) top_bit_ *= 2;
  }

  [[nodiscard]] bool is_cut(std::size_t p) const { return cut_[p]; }

  void set(std::size_t p, bool on) {
    if (cut_[p] == on) return;
    cut_[p] = on;
    count_ += on ? 1 : -1;
    for (std::size_t i = p + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += on ? 1 : -1;
  }

  // Cuts in [0, p].
  [[nodiscard]] std::size_t prefix(std::size_t p) const {
    long s = 0;
    for (std::size_t i = p + 1; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return static_cast<std::size_t>(s);
  }

  // Position of the k-th cut, k >= 1.
  [[nodiscard]] std::size_t kth(std::size_t k) const {
    std::size_t pos = 0;
    long rem = static_cast<long>(k);
    for (std::size_t step = top_bit_; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] < rem) {
        pos += step;
        rem -= tree_[pos];
      }
    }
    return pos;
  }

  [[nodiscard]] std::size_t prev(std::size_t p) const { return kth(prefix(p - 1)); }
  [[nodiscard]] std::size_t next(std::size_t p) const { return kth(prefix(p) + 1); }
  [[nodiscard]] std::size_t segment_index(std::size_t start) const { return prefix(start) - 1; }
  [[nodiscard]] std::size_t segments() const { return static_cast<std::size_t>(count_) - 1; }

  [[nodiscard]] std::vector<std::size_t> boundaries() const {
    std::vector<std::size_t> b;
    b.reserve(static_cast<std::size_t>(count_));
    for (std::size_t p = 0; p < cut_.size(); ++p) {
      if (cut_[p]) b.push_back(p);
    }
    return b;
  }

private:
  std::vector<bool> cut_;
  std::vector<long> tree_;
  std::size_t top_bit_ = 1;
  long count_ = 0;
};

// Symbol multiset with a running sum of w log w, w = f * S, so that
// h = (log N - sum / N) / log D is available after every update.
class SymbolCounter {
public:
  explicit SymbolCounter(std::size_t total) : total_(static_cast<double>(total)) {
    log_total_ = std::log(total_);
  }

  void add(UnitView run, long delta) {
    auto [it, inserted] = counts_.try_emplace(run, 0);
    const long before = it->second;
    const long after = before + delta;
    const double size = static_cast<double>(run.size());
    sum_ += term(static_cast<double>(after) * size) - term(static_cast<double>(before) * size);
    if (before == 0 && after > 0) ++diversity_;
    if (before > 0 && after == 0) --diversity_;
    if (after == 0) {
      counts_.erase(it);
    } else {
      it->second = after;
    }
  }

  [[nodiscard]] double entropy() const {
    if (diversity_ <= 1) return 0.0;
    const double h = (log_total_ - sum_ / total_) / std::log(static_cast<double>(diversity_));
    return std::clamp(h, 0.0, 1.0);
  }

  // Recomputes the running sum from the counts to shed rounding drift.
  void refresh() {
    sum_ = 0.0;
    for (const auto& [run, f] : counts_) sum_ += term(static_cast<double>(f) * static_cast<double>(run.size()));
  }

private:
  static double term(double w) { return w > 0.0 ? w * std::log(w) : 0.0; }

  std::unordered_map<UnitView, long> counts_;
  double total_;
  double log_total_;
  double sum_ = 0.0;
  long diversity_ = 0;
};

struct Candidate {
  Move move;
  std::size_t a = 0, p = 0, b = 0, q = 0; // segment [a, b), cut p, new cut q
  double h = 0.0;
};

class Descent {
public:
  Descent(const Segmentation& start, const SearchConfig& cfg)
      : msg_(start.message_ptr()), cfg_(cfg), cuts_(start.boundaries()),
        counter_(msg_->length()) {
    for (std::size_t i = 0; i < start.size(); ++i) counter_.add(start.segment(i), 1);
    h_ = counter_.entropy();
  }

  [[nodiscard]] double entropy() const { return h_; }

  // Runs passes until one accepts nothing or the cap is hit.
  void run(Engine& rng) {
    const std::size_t n = msg_->length();
    if (n < 2) return;
    std::vector<std::size_t> order(n - 1);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i + 1;

    std::optional<std::vector<std::size_t>> best_cuts;
    double best_h = h_;
    std::size_t stale = 0;
    while (passes_ < cfg_.max_passes) {
      ++passes_;
      counter_.refresh();
      h_ = counter_.entropy();
      shuffle(order, rng);
      std::size_t accepted = 0;
      std::size_t examined = 0;
      bool improved = false;
      for (std::size_t p : order) {
        if (cfg_.candidate_budget != 0 && examined >= cfg_.candidate_budget) break;
        gather(p);
        examined += candidates_.size();
        evaluated_ += candidates_.size();
        const Candidate* best = nullptr;
        for (auto& c : candidates_) {
          c.h = evaluate(c);
          if (!best || c.h < best->h - h_epsilon) best = &c;
        }
        if (!best) continue;
        const bool strict = best->h < h_ - h_epsilon;
        const bool level = cfg_.acceptance == Acceptance::decrease_or_equal &&
                           best->h <= h_ + h_epsilon;
        if (!strict && !level) continue;
        trace_.push_back({passes_, best->move, h_, best->h});
        commit(*best);
        ++accepted;
        if (strict && h_ < best_h - h_epsilon) {
          best_h = h_;
          improved = true;
          if (cfg_.acceptance == Acceptance::decrease_or_equal) best_cuts.reset();
        }
      }
      if (accepted == 0) break;
      if (cfg_.acceptance == Acceptance::decrease_or_equal) {
        // Plateau walks may wander off the best tiling seen; remember it and
        // stop after a few passes without progress.
        if (improved) {
          stale = 0;
          best_cuts = cuts_.boundaries();
        } else if (++stale >= 3) {
          break;
        }
      }
    }
    if (best_cuts && cfg_.acceptance == Acceptance::decrease_or_equal) {
      restore(*best_cuts);
    }
  }

  SearchResult result(std::string init, std::size_t restart, double initial_h) && {
    Segmentation seg(msg_, cuts_.boundaries());
    auto profile = profile_from_segmentation(seg);
    const double h = scalescope::entropy(profile);
    return SearchResult{std::move(seg), std::move(profile), h,        std::move(trace_),
                        std::move(init), restart,           initial_h, passes_, evaluated_};
  }

private:
  void gather(std::size_t p) {
    candidates_.clear();
    if (!cuts_.is_cut(p)) {
      Candidate c;
      c.a = cuts_.prev(p);
      c.b = cuts_.next(p);
      c.p = c.q = p;
      c.move = {MoveKind::split, cuts_.segment_index(c.a), static_cast<std::ptrdiff_t>(p - c.a)};
      candidates_.push_back(c);
      return;
    }
    Candidate base;
    base.a = cuts_.prev(p);
    base.b = cuts_.next(p);
    base.p = p;
    const std::size_t index = cuts_.segment_index(base.a);
    Candidate join = base;
    join.move = {MoveKind::join, index, 0};
    candidates_.push_back(join);
    for (std::size_t step = 1; step <= cfg_.max_drift; ++step) {
      for (int sign : {-1, 1}) {
        const auto delta = static_cast<std::ptrdiff_t>(step) * sign;
        const auto q = static_cast<std::ptrdiff_t>(p) + delta;
        if (q <= static_cast<std::ptrdiff_t>(base.a) || q >= static_cast<std::ptrdiff_t>(base.b)) {
          continue;
        }
        Candidate d = base;
        d.q = static_cast<std::size_t>(q);
        d.move = {MoveKind::drift, index, delta};
        candidates_.push_back(d);
      }
    }
  }

  UnitView run_of(std::size_t from, std::size_t to) const { return msg_->slice(from, to - from); }

  void apply(const Candidate& c, long sign) {
    switch (c.move.kind) {
    case MoveKind::split:
      counter_.add(run_of(c.a, c.b), -sign);
      counter_.add(run_of(c.a, c.p), sign);
      counter_.add(run_of(c.p, c.b), sign);
      break;
    case MoveKind::join:
      counter_.add(run_of(c.a, c.p), -sign);
      counter_.add(run_of(c.p, c.b), -sign);
      counter_.add(run_of(c.a, c.b), sign);
      break;
    case MoveKind::drift:
      counter_.add(run_of(c.a, c.p), -sign);
      counter_.add(run_of(c.p, c.b), -sign);
      counter_.add(run_of(c.a, c.q), sign);
      counter_.add(run_of(c.q, c.b), sign);
      break;
    }
  }

  double evaluate(const Candidate& c) {
    apply(c, 1);
    const double h = counter_.entropy();
    // Undo in reverse so every intermediate count stays non-negative.
    switch (c.move.kind) {
    case MoveKind::split:
      counter_.add(run_of(c.p, c.b), -1);
      counter_.add(run_of(c.a, c.p), -1);
      counter_.add(run_of(c.a, c.b), 1);
      break;
    case MoveKind::join:
      counter_.add(run_of(c.a, c.b), -1);
      counter_.add(run_of(c.p, c.b), 1);
      counter_.add(run_of(c.a, c.p), 1);
      break;
    case MoveKind::drift:
      counter_.add(run_of(c.q, c.b), -1);
      counter_.add(run_of(c.a, c.q), -1);
      counter_.add(run_of(c.p, c.b), 1);
      counter_.add(run_of(c.a, c.p), 1);
      break;
    }
    return h;
  }

  void commit(const Candidate& c) {
    apply(c, 1);
    switch (c.move.kind) {
    case MoveKind::split: cuts_.set(c.p, true); break;
    case MoveKind::join: cuts_.set(c.p, false); break;
    case MoveKind::drift:
      cuts_.set(c.p, false);
      cuts_.set(c.q, true);
      break;
    }
    h_ = counter_.entropy();
  }

  void restore(const std::vector<std::size_t>& boundaries) {
    Segmentation seg(msg_, boundaries);
    cuts_ = CutIndex(boundaries);
    counter_ = SymbolCounter(msg_->length());
    for (std::size_t i = 0; i < seg.size(); ++i) counter_.add(seg.segment(i), 1);
    h_ = counter_.entropy();
  }

  std::shared_ptr<const Message> msg_;
  const SearchConfig& cfg_;
  CutIndex cuts_;
  SymbolCounter counter_;
  double h_ = 0.0;
  std::vector<Candidate> candidates_;
  std::vector<TraceEntry> trace_;
  std::size_t passes_ = 0;
  std::size_t evaluated_ = 0;
};

// Drops each interior cut with a per-run probability, giving a random coarser
// tiling to restart from.
Segmentation coarsen(const Segmentation& seg, Engine& rng) {
  const double drop = 0.2 + 0.7 * uniform_unit(rng);
  const auto& b = seg.boundaries();
  std::vector<std::size_t> kept{0};
  for (std::size_t i = 1; i + 1 < b.size(); ++i) {
    if (uniform_unit(rng) >= drop) kept.push_back(b[i]);
  }
  kept.push_back(b.back());
  return Segmentation(seg.message_ptr(), std::move(kept));
}

SearchResult run_job(const Segmentation& init, const std::string& name, std::size_t restart,
                     const SearchConfig& cfg, std::uint64_t stream) {
  auto rng = make_engine(cfg.rng_seed, stream);
  const Segmentation start = restart == 0 ? init : coarsen(init, rng);
  const double initial = entropy(profile_from_segmentation(start));
  Descent d(start, cfg);
  d.run(rng);
  return std::move(d).result(name, restart, initial);
}

} // namespace

std::string_view to_string(Acceptance a) {
  return a == Acceptance::strict_decrease ? "strict" : "equal";
}

Acceptance parse_acceptance(std::string_view name) {
  if (name == "strict") return Acceptance::strict_decrease;
  if (name == "equal") return Acceptance::decrease_or_equal;
  throw InvalidArgument("unknown acceptance '" + std::string(name) + "'");
}

void SearchConfig::validate() const {
  if (restarts < 1) throw InvalidArgument("restarts must be at least 1");
  if (max_passes < 1) throw InvalidArgument("max_passes must be at least 1");
  if (initializations.empty()) throw InvalidArgument("no initialization scale");
  for (const auto& s : initializations) {
    if (s.kind == ScaleSelector::Kind::fundamental || s.kind == ScaleSelector::Kind::bits) {
      throw InvalidArgument("scale '" + s.name() + "' cannot start a search");
    }
  }
  if (delimiters.delimiters.empty()) throw InvalidArgument("delimiter set is empty");
}

bool better_tiling(double h_a, const Segmentation& a, double h_b, const Segmentation& b) {
  if (h_a < h_b - h_epsilon) return true;
  if (h_a > h_b + h_epsilon) return false;
  if (a.size() != b.size()) return a.size() < b.size();
  return a.boundaries() < b.boundaries();
}

SearchResult descend(const Segmentation& start, const SearchConfig& cfg, std::uint64_t stream) {
  cfg.validate();
  auto rng = make_engine(cfg.rng_seed, stream);
  const double initial = entropy(profile_from_segmentation(start));
  Descent d(start, cfg);
  d.run(rng);
  return std::move(d).result("given", 0, initial);
}

SearchResult minimize_entropy(std::shared_ptr<const Message> msg, const SearchConfig& cfg) {
  cfg.validate();
  if (!msg || msg->empty()) throw InvalidArgument("empty message");

  std::vector<Segmentation> inits;
  inits.reserve(cfg.initializations.size());
  for (const auto& s : cfg.initializations) inits.push_back(tokenize(msg, s, cfg.delimiters));

  const std::size_t jobs = inits.size() * cfg.restarts;
  std::vector<std::optional<SearchResult>> results(jobs);
  const auto work = [&](std::size_t j) {
    const std::size_t i = j / cfg.restarts;
    const std::size_t r = j % cfg.restarts;
    const std::uint64_t stream = (static_cast<std::uint64_t>(i) << 32) | r;
    results[j] = run_job(inits[i], cfg.initializations[i].name(), r, cfg, stream);
  };

  const std::size_t workers = std::min(std::max<std::size_t>(cfg.threads, 1), jobs);
  if (workers <= 1) {
    for (std::size_t j = 0; j < jobs; ++j) work(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t j = next++; j < jobs; j = next++) work(j);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::size_t best = 0;
  std::size_t evaluated = 0;
  for (std::size_t j = 0; j < jobs; ++j) {
    evaluated += results[j]->evaluated;
    if (j != 0 && better_tiling(results[j]->entropy, results[j]->segmentation,
                                results[best]->entropy, results[best]->segmentation)) {
      best = j;
    }
  }
  SearchResult out = std::move(*results[best]);
  out.evaluated = evaluated;
  return out;
}

std::string format_trace(const std::vector<TraceEntry>& trace) {
  std::ostringstream out;
  out.precision(12);
  for (const auto& t : trace) {
    out << t.pass << '\t' << to_string(t.move.kind) << '\t' << t.move.position << '\t'
        << t.move.offset << '\t' << t.h_before << '\t' << t.h_after << '\n';
  }
  return out.str();
}

ExhaustiveResult exhaustive_min_entropy(std::shared_ptr<const Message> msg, std::size_t cap) {
  if (!msg || msg->empty()) throw InvalidArgument("empty message");
  const std::size_t n = msg->length();
  if (n > cap) {
    throw InvalidArgument("message of " + std::to_string(n) + " units exceeds the oracle cap of " +
                          std::to_string(cap));
  }
  if (n > 62) throw InvalidArgument("oracle cap above 62 units is not enumerable");

  const std::uint64_t tilings = std::uint64_t{1} << (n - 1);
  double best_h = 0.0;
  std::vector<std::size_t> best;
  std::vector<std::size_t> b;
  std::unordered_map<UnitView, std::size_t> weights;
  std::vector<double> p;
  for (std::uint64_t mask = 0; mask < tilings; ++mask) {
    b.assign(1, 0);
    for (std::size_t i = 1; i < n; ++i) {
      if (mask & (std::uint64_t{1} << (i - 1))) b.push_back(i);
    }
    b.push_back(n);

    weights.clear();
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      const auto run = msg->slice(b[i], b[i + 1] - b[i]);
      weights[run] += run.size();
    }
    p.clear();
    for (const auto& [run, w] : weights) p.push_back(static_cast<double>(w) / static_cast<double>(n));
    const double h = entropy_flat(p);

    bool take = best.empty();
    if (!take) {
      if (h < best_h - h_epsilon) {
        take = true;
      } else if (h <= best_h + h_epsilon) {
        take = b.size() < best.size() || (b.size() == best.size() && b < best);
      }
    }
    if (take) {
      best_h = h;
      best = b;
    }
  }
  return {Segmentation(msg, std::move(best)), best_h, static_cast<std::size_t>(tilings)};
}

} // namespace scalescope
