#include "hexslide/puzzlegraph.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <mutex>
#include <thread>

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>
#include <absl/hash/hash.h>
#include <fmt/format.h>

#include "hexslide/error.hpp"
#include "hexslide/permgroup.hpp"

namespace hexslide {

std::uint64_t default_state_budget() {
  if (const char* env = std::getenv("HEXSLIDE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultStateBudget;
}

namespace {

// ---------------------------------------------------------------------------
// State codecs: label sequences packed into fixed-width words when the board
// is small enough, otherwise kept as byte strings.

template <int Words>
struct PackedCodec {
  using Key = std::array<std::uint64_t, Words>;
  int cells;
  int bits;
  int per_word;

  Key encode(const std::uint8_t* labels) const {
    Key key{};
    for (int i = 0; i < cells; ++i)
      key[i / per_word] |= std::uint64_t{labels[i]} << ((i % per_word) * bits);
    return key;
  }
  void decode(const Key& key, std::uint8_t* labels) const {
    const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
    for (int i = 0; i < cells; ++i)
      labels[i] = static_cast<std::uint8_t>((key[i / per_word] >> ((i % per_word) * bits)) & mask);
  }
};

struct ByteCodec {
  using Key = std::string;
  int cells;

  Key encode(const std::uint8_t* labels) const {
    return Key(reinterpret_cast<const char*>(labels), static_cast<std::size_t>(cells));
  }
  void decode(const Key& key, std::uint8_t* labels) const {
    std::copy(key.begin(), key.end(), labels);
  }
};

template <class Fn>
decltype(auto) with_codec(const Board& board, std::span<const std::uint8_t> labels, Fn&& fn) {
  const int n = board.size();
  const int max_label = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
  const int bits = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(max_label))));
  const int per_word = 64 / bits;
  if (n <= per_word) return fn(PackedCodec<1>{n, bits, per_word});
  if (n <= 2 * per_word) return fn(PackedCodec<2>{n, bits, per_word});
  if (n <= 4 * per_word) return fn(PackedCodec<4>{n, bits, per_word});
  return fn(ByteCodec{n});
}

void fill_holes(std::span<const std::uint8_t> labels, std::vector<int>& holes) {
  holes.clear();
  for (int i = 0; i < static_cast<int>(labels.size()); ++i)
    if (labels[i] == 0) holes.push_back(i);
}

[[noreturn]] void throw_budget(std::uint64_t budget) {
  throw Error(ErrorCode::budget_exceeded, fmt::format("state budget of {} exceeded", budget));
}

// ---------------------------------------------------------------------------
// Visited set split into independently locked shards.

template <class Key>
class ShardedSet {
 public:
  explicit ShardedSet(bool concurrent)
      : concurrent_(concurrent), shards_(concurrent ? 64 : 1) {}

  bool insert(const Key& key) {
    if (!concurrent_) return shards_[0].set.insert(key).second;
    Shard& shard = shards_[absl::Hash<Key>{}(key) % shards_.size()];
    std::lock_guard lock(shard.mutex);
    return shard.set.insert(key).second;
  }

 private:
  struct Shard {
    std::mutex mutex;
    absl::flat_hash_set<Key> set;
  };
  bool concurrent_;
  std::vector<Shard> shards_;
};

struct BfsStats {
  std::uint64_t size = 0;
  int depth = 0;
  std::uint64_t home_count = 0;
};

// Level-synchronous BFS from one state. Each level's frontier is split
// across workers; a state is expanded exactly once, at its true distance.
template <class Codec>
BfsStats level_bfs(const Board& board, const Codec& codec, std::span<const std::uint8_t> start,
                   const HoleSet& home, const SearchOptions& options) {
  using Key = typename Codec::Key;
  int threads = options.threads;
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int n = board.size();

  ShardedSet<Key> visited(threads > 1);
  std::atomic<std::uint64_t> count{1};
  std::atomic<bool> over_budget{false};
  BfsStats stats;

  const Key root = codec.encode(start.data());
  visited.insert(root);
  std::vector<Key> frontier{root};
  {
    std::vector<int> holes;
    fill_holes(start, holes);
    if (holes == home) stats.home_count = 1;
  }

  struct WorkerOut {
    std::vector<Key> next;
    std::uint64_t home = 0;
  };

  auto expand = [&](std::size_t begin, std::size_t end, WorkerOut& out) {
    std::vector<std::uint8_t> labels(n);
    std::vector<int> holes;
    for (std::size_t k = begin; k < end && !over_budget.load(std::memory_order_relaxed); ++k) {
      codec.decode(frontier[k], labels.data());
      fill_holes(labels, holes);
      for_each_slide(board, labels, holes, [&](int from, int to, int) {
        std::swap(labels[from], labels[to]);
        Key child = codec.encode(labels.data());
        std::swap(labels[from], labels[to]);
        if (!visited.insert(child)) return;
        if (count.fetch_add(1, std::memory_order_relaxed) + 1 > options.budget)
          over_budget.store(true, std::memory_order_relaxed);
        // The child's holes are the parent's with `to` replaced by `from`.
        if (home.size() == holes.size()) {
          bool match = true;
          for (int hcell : holes) {
            const int c = hcell == to ? from : hcell;
            if (!std::binary_search(home.begin(), home.end(), c)) {
              match = false;
              break;
            }
          }
          if (match) ++out.home;
        }
        out.next.push_back(std::move(child));
      });
    }
  };

  while (!frontier.empty()) {
    std::vector<WorkerOut> outs(threads);
    if (threads == 1 || frontier.size() < 256) {
      expand(0, frontier.size(), outs[0]);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (frontier.size() + threads - 1) / threads;
      for (int w = 0; w < threads; ++w) {
        const std::size_t b = std::min(frontier.size(), w * chunk);
        const std::size_t e = std::min(frontier.size(), b + chunk);
        pool.emplace_back([&, b, e, w] { expand(b, e, outs[w]); });
      }
      for (auto& t : pool) t.join();
    }
    if (over_budget) throw_budget(options.budget);

    std::vector<Key> next;
    std::size_t total = 0;
    for (const auto& o : outs) total += o.next.size();
    next.reserve(total);
    for (auto& o : outs) {
      stats.home_count += o.home;
      std::move(o.next.begin(), o.next.end(), std::back_inserter(next));
    }
    if (!next.empty()) ++stats.depth;
    frontier = std::move(next);
  }
  stats.size = count.load();
  return stats;
}

BfsStats run_bfs(const Configuration& start, const HoleSet& home, const SearchOptions& options) {
  return with_codec(start.board(), start.labels(), [&](const auto& codec) {
    return level_bfs(start.board(), codec, start.labels(), home, options);
  });
}

Configuration replay(Configuration c, std::span<const SlideMove> moves) {
  for (const SlideMove& m : moves) c = apply_move(c, m);
  return c;
}

// Move between two decoded states differing by one slide.
SlideMove move_between(const Board& board, std::span<const std::uint8_t> before,
                       std::span<const std::uint8_t> after) {
  int from = -1, to = -1;
  for (int i = 0; i < board.size(); ++i) {
    if (before[i] != 0 && after[i] == 0) from = i;
    if (before[i] == 0 && after[i] != 0) to = i;
  }
  for (int w = 0; w < board.size(); ++w) {
    if (w != to && before[w] == 0 && board.adjacent_indices(w, from) && board.adjacent_indices(w, to))
      return {board.cell(from), board.cell(to), board.cell(w)};
  }
  throw Error(ErrorCode::illegal_move, "states are not one slide apart");
}

void require_compatible(const Configuration& c1, const Configuration& c2) {
  if (!(c1.board() == c2.board()))
    throw Error(ErrorCode::board_mismatch, "configurations are on different boards");
  if (c1.tile_labels() != c2.tile_labels())
    throw Error(ErrorCode::label_mismatch, "configurations carry different tile labels");
}

}  // namespace

ComponentSummary enumerate_component(const Configuration& start, std::span<const Cell> home_holes,
                                     const SearchOptions& options) {
  const HoleSet home = hole_set_of(start.board(), home_holes);
  const BfsStats stats = run_bfs(start, home, options);
  ComponentSummary out{start, stats.size, stats.depth, stats.home_count,
                       stats.size == 1 && is_isolated(start),
                       std::vector<Cell>(home_holes.begin(), home_holes.end())};
  std::sort(out.home_holes.begin(), out.home_holes.end());
  return out;
}

ComponentSummary enumerate_component(const Configuration& start, const SearchOptions& options) {
  const auto holes = start.holes();
  return enumerate_component(start, holes, options);
}

ComponentCensus component_census(const Board& board, int h, const SearchOptions& options) {
  const auto classes = hole_classes(board, h, options.budget);
  if (classes.empty())
    throw Error(ErrorCode::invalid_params,
                fmt::format("{} with {} holes has no non-isolated configuration", board.name(), h));
  const int t = board.size() - h;
  if (t > 255) throw Error(ErrorCode::too_large, "boards are limited to 255 tiles");
  const BigInt all_labelings = factorial(t);
  ComponentCensus census;
  census.components = 0;
  for (const auto& cls : classes) {
    const auto& rep = cls.front();
    const Configuration start = Configuration::with_holes(board, hole_cells(board, rep));
    const BfsStats stats = run_bfs(start, rep, options);
    if (stats.home_count == 0 || all_labelings % stats.home_count != 0)
      throw Error(ErrorCode::division_not_exact,
                  fmt::format("{}! is not divisible by the home count {}", t, stats.home_count));
    ComponentClass entry{rep, cls.size(), stats.size, stats.home_count, stats.depth,
                         all_labelings / stats.home_count};
    census.components += entry.components;
    census.classes.push_back(std::move(entry));
  }
  return census;
}

BigInt count_components(const Board& board, int h, const SearchOptions& options) {
  return component_census(board, h, options).components;
}

GodsNumberBounds gods_number_bounds(const Configuration& start, const SearchOptions& options) {
  if (is_isolated(start))
    throw Error(ErrorCode::invalid_params, "God's number bounds need a non-isolated start");
  const BfsStats stats = run_bfs(start, {}, options);
  return {stats.depth, 2 * stats.depth};
}

GodsNumberBounds gods_number_bounds(const Board& board, int h, const Configuration& start,
                                    const SearchOptions& options) {
  if (!(start.board() == board) || start.hole_count() != h)
    throw Error(ErrorCode::board_mismatch, "start configuration does not match board and holes");
  return gods_number_bounds(start, options);
}

EccentricityProfile eccentricity_profile(const Configuration& start, const SearchOptions& options,
                                         bool use_symmetry) {
  const Board& board = start.board();
  if (is_isolated(start))
    throw Error(ErrorCode::invalid_params, "eccentricity profile needs a non-isolated start");
  const HoleSet home = hole_set_of(board, start.holes());
  auto placements = hole_class(board, home, options.budget);
  std::sort(placements.begin(), placements.end());

  std::vector<HoleSet> reps;
  if (use_symmetry) {
    const auto autos = board_automorphisms(board);
    absl::flat_hash_set<HoleSet> in_class(placements.begin(), placements.end());
    absl::flat_hash_set<HoleSet> covered;
    for (const HoleSet& s : placements) {
      if (covered.contains(s)) continue;
      reps.push_back(s);
      for (const auto& perm : autos) {
        HoleSet image;
        for (int i : s) image.push_back(perm[i]);
        std::sort(image.begin(), image.end());
        if (in_class.contains(image)) covered.insert(image);
      }
    }
  } else {
    reps = placements;
  }

  EccentricityProfile profile;
  profile.radius = -1;
  for (const HoleSet& rep : reps) {
    const auto path = hole_path(board, home, rep, options.budget);
    Configuration c = replay(start, *path);
    const BfsStats stats = run_bfs(c, {}, options);
    profile.component_size = stats.size;
    profile.radius = profile.radius < 0 ? stats.depth : std::min(profile.radius, stats.depth);
    profile.diameter = std::max(profile.diameter, stats.depth);
    profile.entries.push_back({rep, std::move(c), stats.depth});
  }
  return profile;
}

int exact_gods_number(const Board& board, int h, const SearchOptions& options, bool use_symmetry) {
  const auto classes = hole_classes(board, h, options.budget);
  if (classes.empty())
    throw Error(ErrorCode::invalid_params,
                fmt::format("{} with {} holes has no non-isolated configuration", board.name(), h));
  int best = 0;
  for (const auto& cls : classes) {
    const Configuration start = Configuration::with_holes(board, hole_cells(board, cls.front()));
    best = std::max(best, eccentricity_profile(start, options, use_symmetry).diameter);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Bidirectional search.

namespace {

template <class Codec>
std::optional<std::vector<SlideMove>> bidirectional(const Board& board, const Codec& codec,
                                                    const Configuration& c1,
                                                    const Configuration& c2,
                                                    std::uint64_t budget) {
  using Key = typename Codec::Key;
  struct Node {
    Key parent;
    int dist;
  };
  const int n = board.size();
  const Key a = codec.encode(c1.labels().data());
  const Key b = codec.encode(c2.labels().data());
  if (a == b) return std::vector<SlideMove>{};

  std::array<absl::flat_hash_map<Key, Node>, 2> seen;
  std::array<std::vector<Key>, 2> frontier{std::vector<Key>{a}, std::vector<Key>{b}};
  std::array<int, 2> depth{0, 0};
  seen[0].emplace(a, Node{a, 0});
  seen[1].emplace(b, Node{b, 0});

  std::vector<std::uint8_t> labels(n);
  std::vector<int> holes;
  std::optional<std::pair<Key, Key>> meet;  // (node on side 0, node on side 1), adjacent or equal
  int best = -1;

  while (!frontier[0].empty() && !frontier[1].empty() && !meet) {
    const int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    auto& mine = seen[side];
    const auto& other = seen[1 - side];
    std::vector<Key> next;
    for (const Key& key : frontier[side]) {
      codec.decode(key, labels.data());
      fill_holes(labels, holes);
      for_each_slide(board, labels, holes, [&](int from, int to, int) {
        std::swap(labels[from], labels[to]);
        Key child = codec.encode(labels.data());
        std::swap(labels[from], labels[to]);
        if (auto it = other.find(child); it != other.end()) {
          const int total = depth[side] + 1 + it->second.dist;
          if (best < 0 || total < best) {
            best = total;
            meet = side == 0 ? std::pair{key, child} : std::pair{child, key};
          }
        }
        if (mine.contains(child)) return;
        mine.emplace(child, Node{key, depth[side] + 1});
        next.push_back(std::move(child));
      });
      if (seen[0].size() + seen[1].size() > budget) throw_budget(budget);
    }
    ++depth[side];
    frontier[side] = std::move(next);
  }
  if (!meet) return std::nullopt;

  // Key chain from c1 to c2 through the meeting edge.
  std::vector<Key> chain;
  for (Key k = meet->first;; k = seen[0].at(k).parent) {
    chain.push_back(k);
    if (k == a) break;
  }
  std::reverse(chain.begin(), chain.end());
  for (Key k = meet->second;; k = seen[1].at(k).parent) {
    if (!(k == chain.back())) chain.push_back(k);
    if (k == b) break;
  }

  std::vector<SlideMove> moves;
  std::vector<std::uint8_t> before(n), after(n);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    codec.decode(chain[i], before.data());
    codec.decode(chain[i + 1], after.data());
    moves.push_back(move_between(board, before, after));
  }
  return moves;
}

}  // namespace

std::optional<std::vector<SlideMove>> shortest_path(const Configuration& c1,
                                                    const Configuration& c2,
                                                    std::uint64_t budget) {
  require_compatible(c1, c2);
  if (c1.hole_indices().size() != c2.hole_indices().size()) return std::nullopt;
  return with_codec(c1.board(), c1.labels(), [&](const auto& codec) {
    return bidirectional(c1.board(), codec, c1, c2, budget);
  });
}

// ---------------------------------------------------------------------------
// Distance tables.

struct DistanceTable::Impl {
  explicit Impl(Configuration o) : origin(std::move(o)) {}
  virtual ~Impl() = default;
  virtual std::optional<int> lookup(std::span<const std::uint8_t> labels) const = 0;
  Configuration origin;
  std::uint64_t size = 0;
  int depth = 0;
};

namespace {

template <class Codec>
struct TableImpl final : DistanceTable::Impl {
  using Key = typename Codec::Key;

  TableImpl(const Configuration& o, Codec c, std::uint64_t budget) : Impl(o), codec(c) {
    const Board& board = o.board();
    const int n = board.size();
    Key root = codec.encode(o.labels().data());
    dist.emplace(root, 0);
    std::vector<Key> frontier{root};
    std::vector<std::uint8_t> labels(n);
    std::vector<int> holes;
    int d = 0;
    while (!frontier.empty()) {
      std::vector<Key> next;
      for (const Key& key : frontier) {
        codec.decode(key, labels.data());
        fill_holes(labels, holes);
        for_each_slide(board, labels, holes, [&](int from, int to, int) {
          std::swap(labels[from], labels[to]);
          Key child = codec.encode(labels.data());
          std::swap(labels[from], labels[to]);
          if (dist.emplace(child, d + 1).second) next.push_back(std::move(child));
        });
        if (dist.size() > budget) throw_budget(budget);
      }
      if (!next.empty()) ++d;
      frontier = std::move(next);
    }
    size = dist.size();
    depth = d;
  }

  std::optional<int> lookup(std::span<const std::uint8_t> labels) const override {
    auto it = dist.find(codec.encode(labels.data()));
    if (it == dist.end()) return std::nullopt;
    return static_cast<int>(it->second);
  }

  Codec codec;
  absl::flat_hash_map<Key, std::uint32_t> dist;
};

}  // namespace

DistanceTable::DistanceTable(const Configuration& origin, std::uint64_t budget) {
  impl_ = with_codec(origin.board(), origin.labels(), [&](const auto& codec) -> std::unique_ptr<Impl> {
    return std::make_unique<TableImpl<std::decay_t<decltype(codec)>>>(origin, codec, budget);
  });
}

DistanceTable::~DistanceTable() = default;
DistanceTable::DistanceTable(DistanceTable&&) noexcept = default;
DistanceTable& DistanceTable::operator=(DistanceTable&&) noexcept = default;

const Configuration& DistanceTable::origin() const { return impl_->origin; }
std::uint64_t DistanceTable::size() const { return impl_->size; }
int DistanceTable::depth() const { return impl_->depth; }

std::optional<int> DistanceTable::distance(const Configuration& c) const {
  if (!(c.board() == impl_->origin.board()) || c.tile_labels() != impl_->origin.tile_labels())
    return std::nullopt;
  return impl_->lookup(c.labels());
}

// ---------------------------------------------------------------------------

Configuration canonical_start(const Board& board, int h) {
  const int n = board.size();
  if (h < 0 || h > n)
    throw Error(ErrorCode::invalid_params, fmt::format("{} holes on a {}-cell board", h, n));
  if (h >= 2) {
    // Hole index tuples in reverse lexicographic order: {n-h, ..., n-1} first.
    std::vector<int> rev(h);  // positions counted from the end, ascending
    for (int i = 0; i < h; ++i) rev[i] = i;
    while (true) {
      HoleSet holes;
      for (int k = h - 1; k >= 0; --k) holes.push_back(n - 1 - rev[k]);
      if (hole_set_non_isolated(board, holes))
        return Configuration::with_holes(board, hole_cells(board, holes));
      int k = h - 1;
      while (k >= 0 && rev[k] == n - h + k) --k;
      if (k < 0) break;
      ++rev[k];
      for (int j = k + 1; j < h; ++j) rev[j] = rev[j - 1] + 1;
    }
  }
  throw Error(ErrorCode::invalid_params,
              fmt::format("{} with {} holes has no non-isolated configuration", board.name(), h));
}

DotGraph export_dot(const Configuration& start, std::uint64_t max_states) {
  if (is_isolated(start))
    throw Error(ErrorCode::invalid_params, "start configuration is isolated; nothing to export");
  const Board& board = start.board();
  const int n = board.size();
  DotGraph out;
  with_codec(board, start.labels(), [&](const auto& codec) {
    using Key = typename std::decay_t<decltype(codec)>::Key;
    absl::flat_hash_map<Key, std::uint64_t> id;
    std::vector<Key> order{codec.encode(start.labels().data())};
    id.emplace(order.front(), 0);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
    std::vector<std::uint8_t> labels(n);
    std::vector<int> holes;
    for (std::size_t head = 0; head < order.size(); ++head) {
      codec.decode(order[head], labels.data());
      fill_holes(labels, holes);
      absl::flat_hash_set<std::uint64_t> linked;
      for_each_slide(board, labels, holes, [&](int from, int to, int) {
        std::swap(labels[from], labels[to]);
        Key child = codec.encode(labels.data());
        std::swap(labels[from], labels[to]);
        auto [it, inserted] = id.emplace(child, order.size());
        if (inserted) {
          order.push_back(child);
          if (order.size() > max_states)
            throw Error(ErrorCode::too_large,
                        fmt::format("component exceeds {} states; refusing to export", max_states));
        }
        if (it->second > head && linked.insert(it->second).second) edges.emplace_back(head, it->second);
      });
    }
    std::string text = "graph puzzle {\n";
    for (std::size_t i = 0; i < order.size(); ++i) {
      codec.decode(order[i], labels.data());
      text += fmt::format("  n{} [label=\"{}\"];\n", i, fmt::join(labels, " "));
    }
    for (const auto& [u, v] : edges) text += fmt::format("  n{} -- n{};\n", u, v);
    text += "}\n";
    out.text = std::move(text);
    out.nodes = order.size();
    out.edges = edges.size();
  });
  return out;
}

GroupSummary group_component_summary(const Configuration& start, std::uint64_t budget) {
  const Board& board = start.board();
  const int n = board.size();
  const int t = start.tile_count();
  if (is_isolated(start))
    throw Error(ErrorCode::invalid_params, "group analysis needs a non-isolated start");

  // tile_at[cell] = index of the tile in start's occupied-cell order, or -1.
  using Arrangement = std::vector<std::int16_t>;
  Arrangement initial(n, -1);
  for (int i = 0, k = 0; i < n; ++i)
    if (start.label_at_index(i) != 0) initial[i] = static_cast<std::int16_t>(k++);

  PermGroup group(t);
  const HoleSet home = hole_set_of(board, start.holes());
  absl::flat_hash_map<HoleSet, Arrangement> tree;
  tree.emplace(home, initial);
  std::vector<HoleSet> queue{home};
  Perm generator(t);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const HoleSet cur = queue[head];
    const Arrangement arr = tree.at(cur);
    for (const IndexSlide& s : hole_slides(board, cur)) {
      HoleSet next = slide_holes(cur, s);
      Arrangement moved = arr;
      moved[s.to] = arr[s.from];
      moved[s.from] = -1;
      auto it = tree.find(next);
      if (it == tree.end()) {
        tree.emplace(next, std::move(moved));
        queue.push_back(std::move(next));
        if (queue.size() > budget) throw_budget(budget);
        continue;
      }
      // Two arrangements over the same holes: their relabelling lies in the
      // group of the component.
      const Arrangement& recorded = it->second;
      for (int c = 0; c < n; ++c)
        if (recorded[c] >= 0) generator[recorded[c]] = moved[c];
      group.add_generator(generator);
    }
  }

  GroupSummary out;
  out.home_count = group.order();
  out.placements = queue.size();
  out.component_size = out.home_count * out.placements;
  const BigInt all = factorial(t);
  out.components = all / out.home_count;
  out.full_symmetric = out.home_count == all;
  out.alternating = t >= 2 && out.home_count * 2 == all;
  if (out.alternating) {
    // Index-two subgroups of S_t other than A_t only exist for t <= 4.
    Perm transposition = identity_perm(t);
    std::swap(transposition[0], transposition[1]);
    out.alternating = !group.contains(transposition);
  }
  return out;
}

}  // namespace hexslide
