#include "ochoice/generate.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "ochoice/error.hpp"

namespace ochoice {

ShapeSpec ShapeSpec::parse(std::string_view text) {
  ShapeSpec shape;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string_view::npos)
      fail(Errc::ParseError, "shape item '" + std::string(item) + "' is not key=value");
    std::string key(item.substr(0, eq));
    long value;
    try {
      value = std::stol(std::string(item.substr(eq + 1)));
    } catch (const std::exception&) {
      fail(Errc::ParseError, "shape value in '" + std::string(item) + "' is not an integer");
    }
    if (value < 1) fail(Errc::ParseError, "shape value in '" + std::string(item) + "' must be >= 1");
    if (key == "menus") shape.menus = static_cast<size_t>(value);
    else if (key == "alts") shape.alts = static_cast<size_t>(value);
    else if (key == "minsize") shape.min_size = static_cast<size_t>(value);
    else if (key == "maxsize") shape.max_size = static_cast<size_t>(value);
    else if (key == "denmax") shape.den_max = value;
    else fail(Errc::ParseError, "unknown shape key '" + key + "'");
  }
  if (shape.min_size > shape.max_size)
    fail(Errc::ParseError, "shape has minsize > maxsize");
  if (shape.max_size > shape.alts)
    fail(Errc::ParseError, "shape has maxsize > alts");
  return shape;
}

std::string ShapeSpec::str() const {
  return "menus=" + std::to_string(menus) + ",alts=" + std::to_string(alts) +
         ",minsize=" + std::to_string(min_size) + ",maxsize=" + std::to_string(max_size) +
         ",denmax=" + std::to_string(den_max);
}

GenMode gen_mode_parse(std::string_view name) {
  if (name == "arbitrary") return GenMode::Arbitrary;
  if (name == "one-mistake") return GenMode::OneMistake;
  if (name == "progressive-source") return GenMode::ProgressiveSource;
  if (name == "lattice-source") return GenMode::LatticeSource;
  fail(Errc::ParseError, "unknown generation mode '" + std::string(name) + "'");
}

std::string_view gen_mode_name(GenMode mode) {
  switch (mode) {
    case GenMode::Arbitrary: return "arbitrary";
    case GenMode::OneMistake: return "one-mistake";
    case GenMode::ProgressiveSource: return "progressive-source";
    case GenMode::LatticeSource: return "lattice-source";
  }
  return "?";
}

namespace {

// mt19937_64 is fully pinned by the standard; the helpers below avoid
// std::uniform_int_distribution, whose output is implementation-defined.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  std::uint64_t below(std::uint64_t k) {
    if (k <= 1) return 0;
    std::uint64_t threshold = (-k) % k; // 2^64 mod k
    for (;;) {
      std::uint64_t r = engine();
      if (r >= threshold) return r % k;
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }
};

std::string label_for(size_t rank) {
  std::string out;
  out.push_back(static_cast<char>('a' + rank % 26));
  if (rank >= 26) out += std::to_string(rank / 26);
  return out;
}

struct Skeleton {
  std::vector<std::string> order;
  std::vector<std::vector<std::string>> menus;
  std::vector<std::vector<size_t>> menu_ranks; // sorted, best first
};

Skeleton make_skeleton(const ShapeSpec& shape, Rng& rng) {
  Skeleton sk;
  for (size_t r = 0; r < shape.alts; ++r) sk.order.push_back(label_for(r));
  for (size_t i = 0; i < shape.menus; ++i) {
    size_t size = shape.min_size + rng.below(shape.max_size - shape.min_size + 1);
    std::vector<size_t> pool(shape.alts);
    for (size_t r = 0; r < shape.alts; ++r) pool[r] = r;
    rng.shuffle(pool);
    std::vector<size_t> ranks(pool.begin(), pool.begin() + static_cast<long>(size));
    std::sort(ranks.begin(), ranks.end());
    std::vector<std::string> labels;
    for (size_t r : ranks) labels.push_back(sk.order[r]);
    sk.menu_ranks.push_back(std::move(ranks));
    sk.menus.push_back(std::move(labels));
  }
  return sk;
}

Instance instance_from_weights(const Skeleton& sk,
                               const std::vector<std::vector<long>>& weights) {
  std::vector<std::map<std::string, Rational>> rho(sk.menus.size());
  for (size_t i = 0; i < sk.menus.size(); ++i) {
    long total = 0;
    for (long w : weights[i]) total += w;
    for (size_t k = 0; k < sk.menus[i].size(); ++k)
      rho[i][sk.menus[i][k]] = Rational(weights[i][k], total);
  }
  return Instance::build(sk.order, sk.menus, rho);
}

Generated gen_arbitrary(const ShapeSpec& shape, Rng& rng) {
  Skeleton sk = make_skeleton(shape, rng);
  std::vector<std::vector<long>> weights(sk.menus.size());
  for (size_t i = 0; i < sk.menus.size(); ++i) {
    auto& w = weights[i];
    do {
      w.assign(sk.menus[i].size(), 0);
      for (auto& v : w) v = static_cast<long>(rng.below(static_cast<std::uint64_t>(shape.den_max) + 1));
    } while (std::all_of(w.begin(), w.end(), [](long v) { return v == 0; }));
  }
  Generated out{instance_from_weights(sk, weights), std::nullopt, std::nullopt};
  return out;
}

// Build the instance as the marginals of an integer-weighted distribution
// over the given types.
Generated from_source_weights(const Skeleton& sk,
                              const std::vector<ChoiceType>& types,
                              const std::vector<long>& weights,
                              std::optional<std::vector<ChoiceType>> type_set) {
  long total = 0;
  for (long w : weights) total += w;

  // marginal weights per menu element
  std::vector<std::vector<long>> marginal(sk.menus.size());
  for (size_t i = 0; i < sk.menus.size(); ++i)
    marginal[i].assign(sk.menus[i].size(), 0);
  for (size_t t = 0; t < types.size(); ++t) {
    for (size_t i = 0; i < sk.menu_ranks.size(); ++i) {
      const auto& ranks = sk.menu_ranks[i];
      size_t pos = static_cast<size_t>(
          std::lower_bound(ranks.begin(), ranks.end(), types[t][i]) - ranks.begin());
      marginal[i][pos] += weights[t];
    }
  }

  Instance inst = instance_from_weights(sk, marginal);
  TypeDistribution pi(inst);
  std::map<ChoiceType, long> merged;
  for (size_t t = 0; t < types.size(); ++t)
    if (weights[t] > 0) merged[types[t]] += weights[t];
  for (const auto& [s, w] : merged) pi.add(s, Rational(w, total));
  Generated out{std::move(inst), std::nullopt, std::move(type_set)};
  out.pi = std::move(pi);
  return out;
}

Generated gen_one_mistake(const ShapeSpec& shape, Rng& rng) {
  Skeleton sk = make_skeleton(shape, rng);

  std::vector<ChoiceType> types;
  ChoiceType core(sk.menus.size());
  for (size_t i = 0; i < sk.menus.size(); ++i)
    core[i] = static_cast<AltRank>(sk.menu_ranks[i][0]);
  types.push_back(core);
  for (size_t i = 0; i < sk.menus.size(); ++i) {
    for (size_t k = 1; k < sk.menu_ranks[i].size(); ++k) {
      ChoiceType s = core;
      s[i] = static_cast<AltRank>(sk.menu_ranks[i][k]);
      types.push_back(std::move(s));
    }
  }

  std::vector<long> weights(types.size());
  do {
    for (auto& w : weights)
      w = static_cast<long>(rng.below(static_cast<std::uint64_t>(shape.den_max) + 1));
  } while (std::all_of(weights.begin(), weights.end(), [](long v) { return v == 0; }));

  return from_source_weights(sk, types, weights, std::nullopt);
}

Generated gen_progressive(const ShapeSpec& shape, Rng& rng) {
  Skeleton sk = make_skeleton(shape, rng);

  // climb from the worst type, improving at least one menu per step
  std::vector<size_t> pos(sk.menus.size());
  for (size_t i = 0; i < sk.menus.size(); ++i) pos[i] = sk.menu_ranks[i].size() - 1;
  auto type_at = [&]() {
    ChoiceType s(sk.menus.size());
    for (size_t i = 0; i < sk.menus.size(); ++i)
      s[i] = static_cast<AltRank>(sk.menu_ranks[i][pos[i]]);
    return s;
  };

  std::vector<ChoiceType> chain;
  chain.push_back(type_at());
  for (;;) {
    std::vector<size_t> movable;
    for (size_t i = 0; i < pos.size(); ++i)
      if (pos[i] > 0) movable.push_back(i);
    if (movable.empty()) break;
    if (chain.size() > 1 && rng.below(4) == 0) break; // random chain length
    bool moved = false;
    for (size_t i : movable) {
      size_t step = rng.below(pos[i] + 1);
      if (step > 0) { pos[i] -= step; moved = true; }
    }
    if (!moved) pos[movable[rng.below(movable.size())]] -= 1;
    chain.push_back(type_at());
  }

  std::vector<long> weights(chain.size());
  for (auto& w : weights)
    w = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(shape.den_max)));
  return from_source_weights(sk, chain, weights, std::nullopt);
}

Generated gen_lattice(const ShapeSpec& shape, Rng& rng) {
  Skeleton sk = make_skeleton(shape, rng);

  size_t seeds = 2 + rng.below(3);
  std::set<ChoiceType> closure;
  for (size_t t = 0; t < seeds; ++t) {
    ChoiceType s(sk.menus.size());
    for (size_t i = 0; i < sk.menus.size(); ++i)
      s[i] = static_cast<AltRank>(sk.menu_ranks[i][rng.below(sk.menu_ranks[i].size())]);
    closure.insert(std::move(s));
  }
  // close under join and meet; coordinatewise values stay within the seed
  // values, so this terminates quickly at desk scale
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<ChoiceType> snapshot(closure.begin(), closure.end());
    for (size_t a = 0; a < snapshot.size() && !grew; ++a) {
      for (size_t b = a + 1; b < snapshot.size(); ++b) {
        if (closure.insert(join_of(snapshot[a], snapshot[b])).second ||
            closure.insert(meet_of(snapshot[a], snapshot[b])).second) {
          grew = true;
          break;
        }
      }
    }
  }

  std::vector<ChoiceType> types(closure.begin(), closure.end());
  std::vector<long> weights(types.size());
  for (auto& w : weights)
    w = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(shape.den_max)));
  return from_source_weights(sk, types, weights, types);
}

} // namespace

Generated gen_random(const ShapeSpec& shape, std::uint64_t seed, GenMode mode) {
  Rng rng(seed);
  switch (mode) {
    case GenMode::Arbitrary: return gen_arbitrary(shape, rng);
    case GenMode::OneMistake: return gen_one_mistake(shape, rng);
    case GenMode::ProgressiveSource: return gen_progressive(shape, rng);
    case GenMode::LatticeSource: return gen_lattice(shape, rng);
  }
  fail(Errc::Internal, "unhandled generation mode");
}

} // namespace ochoice
