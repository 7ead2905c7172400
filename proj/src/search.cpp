#include "ucg/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <numeric>
#include <thread>

#include "ucg/verifier.hpp"

namespace ucg {

namespace {

using Clock = std::chrono::steady_clock;
using Word = std::uint64_t;

constexpr std::uint64_t kBatch = 4096;
constexpr std::uint64_t kEffectiveInfinite = 3;

// All rows over the capped alphabet, indexed in mixed radix with column 0
// most significant, plus adjacency and label-range bitsets.
class RowSpace {
 public:
  explicit RowSpace(const std::vector<std::uint64_t>& caps) : caps_(caps) {
    size_ = 1;
    for (auto& k : caps_) {
      if (k == PartitionSignature::kInfinite) k = kEffectiveInfinite;
      size_ *= k;
      if (size_ > kMaxRowSpace) {
        throw DomainError("alphabet spans too many rows for the search");
      }
    }
    r_ = caps_.size();
    words_ = (size_ + 63) / 64;
    labels_.resize(size_ * r_);
    for (std::size_t u = 0; u < size_; ++u) {
      std::size_t rest = u;
      for (std::size_t j = r_; j-- > 0;) {
        labels_[u * r_ + j] = static_cast<std::uint32_t>(rest % caps_[j]);
        rest /= caps_[j];
      }
    }
    adj_.assign(size_ * words_, 0);
    for (std::size_t u = 0; u < size_; ++u) {
      for (std::size_t v = 0; v < size_; ++v) {
        bool differs = true;
        for (std::size_t j = 0; j < r_ && differs; ++j) {
          differs = label(u, j) != label(v, j);
        }
        if (differs) adj_[u * words_ + v / 64] |= Word{1} << (v % 64);
      }
    }
    le_offset_.resize(r_);
    std::size_t total = 0;
    for (std::size_t j = 0; j < r_; ++j) {
      le_offset_[j] = total;
      total += caps_[j];
    }
    le_.assign(total * words_, 0);
    for (std::size_t j = 0; j < r_; ++j) {
      for (std::size_t t = 0; t < caps_[j]; ++t) {
        Word* bits = &le_[(le_offset_[j] + t) * words_];
        for (std::size_t u = 0; u < size_; ++u) {
          if (label(u, j) <= t) bits[u / 64] |= Word{1} << (u % 64);
        }
      }
    }
  }

  std::size_t size() const { return size_; }
  std::size_t words() const { return words_; }
  std::size_t r() const { return r_; }
  std::uint64_t cap(std::size_t j) const { return caps_[j]; }
  const std::vector<std::uint64_t>& caps() const { return caps_; }
  std::uint32_t label(std::size_t u, std::size_t j) const {
    return labels_[u * r_ + j];
  }
  const Word* adj(std::size_t u) const { return &adj_[u * words_]; }
  const Word* le(std::size_t j, std::size_t t) const {
    return &le_[(le_offset_[j] + t) * words_];
  }

  std::size_t index(const ResidueString& s) const {
    std::size_t u = 0;
    for (std::size_t j = 0; j < r_; ++j) u = u * caps_[j] + s[j];
    return u;
  }
  ResidueString row(std::size_t u) const {
    std::vector<Residue> terms(r_);
    for (std::size_t j = 0; j < r_; ++j) terms[j] = label(u, j);
    return ResidueString(std::move(terms));
  }
  CycleArray cycle(const std::vector<std::size_t>& path) const {
    std::vector<ResidueString> rows;
    rows.reserve(path.size());
    for (auto u : path) rows.push_back(row(u));
    return CycleArray(std::move(rows));
  }

 private:
  std::vector<std::uint64_t> caps_;
  std::size_t size_ = 0, words_ = 0, r_ = 0;
  std::vector<std::uint32_t> labels_;
  std::vector<Word> adj_;
  std::vector<std::size_t> le_offset_;
  std::vector<Word> le_;
};

void validate(const SearchConfig& cfg) {
  if (cfg.r < 1) throw DomainError("search needs r >= 1");
  if (cfg.alphabet.size() != cfg.r) {
    throw DomainError("alphabet must list one cap per column");
  }
  for (auto k : cfg.alphabet) {
    if (k < 2) throw DomainError("infeasible alphabet: every column needs 2 labels");
  }
  if (cfg.budget.count() <= 0) throw DomainError("search budget must be positive");
  if (cfg.mode != SearchMode::kLongest && (!cfg.target || *cfg.target < 3)) {
    throw DomainError("enumeration needs a target length >= 3");
  }
}

// Upper bound on any cycle over the space: the residue-count bound, or 4
// for repeated rows (which only occur in cycles of length <= 4).
std::size_t combinatorial_cap(const RowSpace& space, bool repeats) {
  const BigInt b = residue_bound(space.caps());
  std::size_t cap = b > BigInt(space.size() + 2)
                        ? space.size() + 2
                        : b.convert_to<std::size_t>();
  if (repeats) cap = std::max<std::size_t>(cap, 4);
  return cap;
}

struct Shared {
  Shared(const SearchConfig& c, const RowSpace& s) : cfg(c), space(s) {}

  const SearchConfig& cfg;
  const RowSpace& space;
  std::size_t stop_length = 0;
  std::atomic<std::size_t> best{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> timed_out{false};
  std::atomic<bool> stopped_at_bound{false};
  std::atomic<std::uint64_t> nodes{0};
  Clock::time_point deadline;
  std::mutex hook_mu;
  const std::function<bool(const CycleArray&)>* sink = nullptr;
};

class Worker {
 public:
  explicit Worker(Shared& shared)
      : sh_(shared),
        space_(shared.space),
        words_(space_.words()),
        depths_(space_.size() + 4) {
    pool_.assign(depths_ * words_, 0);
    pathset_.assign(depths_ * words_, 0);
    cand_.assign(depths_ * words_, 0);
    used_.assign(depths_ * space_.r(), 0);
    path_.reserve(depths_);
  }

  // Sets up rows 0 and 1 and returns the admissible third rows. Triangles
  // found at this level are recorded directly.
  std::vector<std::size_t> root() {
    init_root();
    std::vector<std::size_t> tasks;
    expand(1, &tasks);
    return tasks;
  }

  void run_task(std::size_t task_id, std::size_t third) {
    task_ = task_id;
    init_root();
    if (push(1, third)) expand(2, nullptr);
    path_.resize(2);
  }

  std::size_t local_best() const { return best_len_; }
  const std::vector<std::size_t>& local_witness() const { return best_path_; }
  std::size_t witness_task() const { return best_task_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  Word* pool(std::size_t d) { return &pool_[d * words_]; }
  Word* pathset(std::size_t d) { return &pathset_[d * words_]; }
  Word* cand(std::size_t d) { return &cand_[d * words_]; }
  std::uint32_t* used(std::size_t d) { return &used_[d * space_.r()]; }

  void init_root() {
    const std::size_t ones = space_.index(
        ResidueString(std::vector<Residue>(space_.r(), 1)));
    path_.assign({0, ones});
    std::fill(pool(1), pool(1) + words_, ~Word{0});
    if (space_.size() % 64) {
      pool(1)[words_ - 1] = (Word{1} << (space_.size() % 64)) - 1;
    }
    std::fill(pathset(1), pathset(1) + words_, 0);
    pathset(1)[0] |= 1;
    pathset(1)[ones / 64] |= Word{1} << (ones % 64);
    std::fill(used(1), used(1) + space_.r(), 2);
  }

  // Appends w after row d; fills depth d+1 state. Returns false when the
  // bound rules the extension out.
  bool push(std::size_t d, std::size_t w) {
    const Word* nd = space_.adj(path_[d]);
    const Word* nw = space_.adj(w);
    const Word* n0 = space_.adj(path_[0]);
    Word* next_pool = pool(d + 1);
    Word* next_set = pathset(d + 1);
    const Word* cur_pool = pool(d);
    const Word* cur_set = pathset(d);
    const bool repeats = sh_.cfg.allow_repeated_rows;
    std::size_t inner = 0;
    bool closable = false;
    for (std::size_t i = 0; i < words_; ++i) {
      next_pool[i] = cur_pool[i] & ~nd[i];
      next_set[i] = cur_set[i];
      // Later rows avoid the neighbours of rows 1..d. Rows from the second
      // one after w onward also avoid w's neighbours, except the closer.
      Word future = next_pool[i];
      if (!repeats) future &= ~(cur_set[i]);
      inner += std::popcount(future & ~n0[i] & ~nw[i]);
      closable = closable || (future & n0[i]);
    }
    next_set[w / 64] |= Word{1} << (w % 64);
    if (!closable) return false;
    const std::size_t length = d + 2;  // rows 0..d+1
    // Row d+2, at most `inner` middle rows, then the closer.
    const std::size_t reach = length + inner + 2;
    if (sh_.cfg.mode == SearchMode::kLongest) {
      if (reach <= sh_.best.load(std::memory_order_relaxed)) return false;
    } else {
      if (length >= *sh_.cfg.target || reach < *sh_.cfg.target) return false;
    }
    const std::uint32_t* cur_used = used(d);
    std::uint32_t* next_used = used(d + 1);
    for (std::size_t j = 0; j < space_.r(); ++j) {
      next_used[j] = std::max(cur_used[j], space_.label(w, j) + 1);
    }
    path_.resize(d + 1);
    path_.push_back(w);
    return true;
  }

  void tick(std::size_t d) {
    if (++nodes_ % kBatch != 0) return;
    sh_.nodes.fetch_add(kBatch, std::memory_order_relaxed);
    if (Clock::now() > sh_.deadline) {
      sh_.timed_out = true;
      sh_.stop = true;
    }
    if (sh_.cfg.progress) {
      std::lock_guard lock(sh_.hook_mu);
      sh_.cfg.progress({sh_.nodes.load(), d + 1, sh_.best.load()});
    }
  }

  void on_cycle(std::size_t d, std::size_t closer) {
    const std::size_t length = d + 2;
    if (sh_.cfg.mode == SearchMode::kLongest) {
      if (length <= best_len_) return;
      best_len_ = length;
      best_path_.assign(path_.begin(), path_.begin() + d + 1);
      best_path_.push_back(closer);
      best_task_ = task_;
      std::size_t seen = sh_.best.load();
      while (seen < length && !sh_.best.compare_exchange_weak(seen, length)) {
      }
      if (length >= sh_.stop_length) {
        sh_.stopped_at_bound = true;
        sh_.stop = true;
      }
      return;
    }
    if (length != *sh_.cfg.target) return;
    std::vector<std::size_t> cycle(path_.begin(), path_.begin() + d + 1);
    cycle.push_back(closer);
    if (sh_.cfg.mode == SearchMode::kDecide) {
      if (best_len_ == 0) {
        best_len_ = length;
        best_path_ = std::move(cycle);
        best_task_ = task_;
      }
      sh_.stop = true;
      return;
    }
    if (!(*sh_.sink)(space_.cycle(cycle))) sh_.stop = true;
  }

  // Expands the path rows 0..d. When tasks is non-null the admissible next
  // rows are collected instead of explored.
  void expand(std::size_t d, std::vector<std::size_t>* tasks) {
    tick(d);
    if (sh_.stop.load(std::memory_order_relaxed)) return;

    Word* c = cand(d);
    const Word* nd = space_.adj(path_[d]);
    const Word* p = pool(d);
    const Word* set = pathset(d);
    const std::uint32_t* u = used(d);
    for (std::size_t i = 0; i < words_; ++i) {
      c[i] = nd[i] & p[i];
      if (!sh_.cfg.allow_repeated_rows) c[i] &= ~set[i];
    }
    for (std::size_t j = 0; j < space_.r(); ++j) {
      const auto t = std::min<std::size_t>(u[j], space_.cap(j) - 1);
      const Word* le = space_.le(j, t);
      for (std::size_t i = 0; i < words_; ++i) c[i] &= le[i];
    }

    const Word* n0 = space_.adj(path_[0]);
    for (std::size_t i = 0; i < words_; ++i) {
      Word closers = c[i] & n0[i];
      while (closers) {
        const std::size_t w = i * 64 + std::countr_zero(closers);
        closers &= closers - 1;
        on_cycle(d, w);
        if (sh_.stop.load(std::memory_order_relaxed)) return;
      }
    }
    for (std::size_t i = 0; i < words_; ++i) {
      Word ext = c[i] & ~n0[i];
      while (ext) {
        const std::size_t w = i * 64 + std::countr_zero(ext);
        ext &= ext - 1;
        if (tasks) {
          tasks->push_back(w);
          continue;
        }
        if (push(d, w)) expand(d + 1, nullptr);
        if (sh_.stop.load(std::memory_order_relaxed)) return;
      }
    }
  }

  Shared& sh_;
  const RowSpace& space_;
  std::size_t words_;
  std::size_t depths_;
  std::vector<Word> pool_, pathset_, cand_;
  std::vector<std::uint32_t> used_;
  std::vector<std::size_t> path_;
  std::size_t task_ = 0;
  std::size_t best_len_ = 0;
  std::vector<std::size_t> best_path_;
  std::size_t best_task_ = 0;
  std::uint64_t nodes_ = 0;
};

CycleArray checked_incumbent(const CycleArray& c, const SearchConfig& cfg,
                             const RowSpace& space) {
  if (c.r() != cfg.r) throw DomainError("incumbent has the wrong width");
  if (!verify_induced_cycle(c).ok) {
    throw DomainError("incumbent is not an induced cycle");
  }
  auto canon = canonical_form(c);
  const auto alpha = alphabet(canon);
  for (std::size_t j = 0; j < cfg.r; ++j) {
    if (alpha.count(j) > space.cap(j)) {
      throw DomainError("incumbent does not fit the alphabet caps");
    }
  }
  if (!cfg.allow_repeated_rows) {
    auto rows = canon.rows();
    std::sort(rows.begin(), rows.end());
    if (std::adjacent_find(rows.begin(), rows.end()) != rows.end()) {
      throw DomainError("incumbent repeats a row");
    }
  }
  return canon;
}

}  // namespace

SearchConfig SearchConfig::per_column(std::vector<std::uint64_t> caps) {
  SearchConfig cfg;
  cfg.r = caps.size();
  cfg.alphabet = std::move(caps);
  return cfg;
}

SearchConfig SearchConfig::global_cap(std::size_t r, std::uint64_t a) {
  return per_column(std::vector<std::uint64_t>(r, a));
}

SearchResult search_longest(const SearchConfig& cfg) {
  validate(cfg);
  if (cfg.mode == SearchMode::kEnumerate) {
    throw DomainError("use enumerate_canonical_cycles for enumeration");
  }
  const auto start = Clock::now();
  const RowSpace space(cfg.alphabet);
  Shared shared(cfg, space);
  shared.deadline =
      start + std::chrono::duration_cast<Clock::duration>(cfg.budget);

  std::size_t cap = combinatorial_cap(space, cfg.allow_repeated_rows);
  if (cfg.theory_cap) {
    cap = std::min<std::size_t>(cap, theoretical_bounds(cfg.r).upper);
  }
  shared.stop_length = cap;

  SearchResult result;
  std::optional<CycleArray> seeded;
  if (cfg.incumbent && cfg.mode == SearchMode::kLongest) {
    seeded = checked_incumbent(*cfg.incumbent, cfg, space);
    shared.best = seeded->k();
    if (seeded->k() >= cap) {
      result.best_length = seeded->k();
      result.witness = seeded;
      result.exhaustive = true;
      result.stopped_at_bound = true;
      result.elapsed = Clock::now() - start;
      return result;
    }
  }

  Worker root(shared);
  const auto tasks = root.root();
  std::vector<std::unique_ptr<Worker>> workers;
  const std::size_t n_workers = std::max<std::size_t>(
      1, std::min(cfg.workers, std::max<std::size_t>(tasks.size(), 1)));
  for (std::size_t i = 0; i < n_workers; ++i) {
    workers.push_back(std::make_unique<Worker>(shared));
  }
  std::atomic<std::size_t> next{0};
  auto drain = [&](Worker& w) {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      if (shared.stop) break;
      w.run_task(t + 1, tasks[t]);  // task 0 is the root
    }
  };
  if (n_workers == 1) {
    drain(*workers.front());
  } else {
    std::vector<std::jthread> threads;
    for (auto& w : workers) threads.emplace_back([&, wp = w.get()] { drain(*wp); });
  }

  // Merge: longest first, then the earliest task in depth-first order.
  const Worker* best = &root;
  for (const auto& w : workers) {
    if (w->local_best() > best->local_best() ||
        (w->local_best() == best->local_best() && w->local_best() > 0 &&
         w->witness_task() < best->witness_task())) {
      best = w.get();
    }
  }
  result.nodes_expanded = root.nodes();
  for (const auto& w : workers) result.nodes_expanded += w->nodes();

  if (seeded && seeded->k() >= best->local_best()) {
    result.best_length = seeded->k();
    result.witness = seeded;
  } else if (best->local_best() > 0) {
    result.best_length = best->local_best();
    result.witness = space.cycle(best->local_witness());
  }
  result.stopped_at_bound = shared.stopped_at_bound;
  result.exhaustive = !shared.timed_out;
  result.elapsed = Clock::now() - start;
  return result;
}

EnumerationSummary enumerate_canonical_cycles(
    const SearchConfig& cfg,
    const std::function<bool(const CycleArray&)>& sink) {
  validate(cfg);
  if (cfg.mode == SearchMode::kLongest) {
    throw DomainError("enumeration needs mode enumerate");
  }
  const auto start = Clock::now();
  const RowSpace space(cfg.alphabet);
  SearchConfig local = cfg;
  local.mode = SearchMode::kEnumerate;
  Shared shared(local, space);
  shared.deadline =
      start + std::chrono::duration_cast<Clock::duration>(cfg.budget);

  EnumerationSummary summary;
  std::uint64_t emitted = 0;
  bool sink_stopped = false;
  const std::function<bool(const CycleArray&)> counting =
      [&](const CycleArray& c) {
        ++emitted;
        sink_stopped = !sink(c);
        return !sink_stopped;
      };
  shared.sink = &counting;
  Worker worker(shared);
  const auto tasks = worker.root();
  for (std::size_t t = 0; t < tasks.size() && !shared.stop; ++t) {
    worker.run_task(t + 1, tasks[t]);
  }
  summary.count = emitted;
  summary.truncated = shared.timed_out || sink_stopped;
  summary.nodes_expanded = worker.nodes();
  summary.elapsed = Clock::now() - start;
  return summary;
}

SearchResult longest_induced_cycle_naive(
    const std::vector<std::vector<bool>>& adjacency) {
  const auto start = Clock::now();
  const std::size_t n = adjacency.size();
  SearchResult result;
  std::vector<std::size_t> path;
  std::vector<bool> on_path(n, false);

  // Extends an induced path starting at path[0]; every vertex after the
  // first is larger than it.
  std::function<void()> dfs = [&] {
    ++result.nodes_expanded;
    const std::size_t last = path.back();
    for (std::size_t w = path[0] + 1; w < n; ++w) {
      if (on_path[w] || !adjacency[last][w]) continue;
      bool chord = false;
      for (std::size_t i = 1; i + 1 < path.size() && !chord; ++i) {
        chord = adjacency[path[i]][w];
      }
      if (chord) continue;
      if (path.size() >= 2 && adjacency[path[0]][w]) {
        if (path.size() + 1 > result.best_length) {
          result.best_length = path.size() + 1;
          result.vertices.assign(path.begin(), path.end());
          result.vertices.push_back(w);
        }
        continue;
      }
      path.push_back(w);
      on_path[w] = true;
      dfs();
      on_path[w] = false;
      path.pop_back();
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path.assign({s});
    on_path[s] = true;
    dfs();
    on_path[s] = false;
  }
  result.exhaustive = true;
  result.elapsed = Clock::now() - start;
  return result;
}

SearchResult brute_force_oracle(std::uint64_t n) {
  if (n < 3 || n > 64) throw DomainError("oracle needs 3 <= n <= 64");
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::uint64_t x = 0; x < n; ++x) {
    for (std::uint64_t y = 0; y < n; ++y) {
      adj[x][y] = x != y && std::gcd(x > y ? x - y : y - x, n) == 1;
    }
  }
  auto result = longest_induced_cycle_naive(adj);
  if (result.best_length > 0) {
    const auto m = radical(factorize(n));
    std::vector<ResidueString> rows;
    for (auto v : result.vertices) {
      rows.push_back(residue_rep(static_cast<std::int64_t>(v), m));
    }
    result.witness = canonical_form(CycleArray(std::move(rows)));
  }
  return result;
}

}  // namespace ucg
