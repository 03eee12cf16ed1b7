#include "jarcon/association.hpp"

#include <algorithm>
#include <cstdlib>

#include <fmt/format.h>

#include "jarcon/error.hpp"

namespace jarcon {

namespace {

int sign(int v) { return (v > 0) - (v < 0); }

void check_pair(const ScorePair& p) {
  // Constructors carry the range diagnostics.
  static_cast<void>(LikingScore(p.liking));
  static_cast<void>(JarScore(p.jar));
}

}  // namespace

std::vector<ScorePair> to_pairs(std::span<const Evaluation> evaluations) {
  std::vector<ScorePair> out;
  out.reserve(evaluations.size());
  for (const auto& e : evaluations) out.push_back({e.liking.value(), e.jar.value()});
  return out;
}

ContingencyTable::ContingencyTable(bool folded)
    : folded_(folded), counts_(static_cast<std::size_t>(kRows * cols()), 0) {}

ContingencyTable ContingencyTable::from_counts(
    const std::vector<std::vector<std::int64_t>>& counts, bool folded) {
  ContingencyTable t(folded);
  if (static_cast<int>(counts.size()) != t.rows()) {
    throw Error(ErrorCode::validation,
                fmt::format("contingency table needs {} rows, got {}", t.rows(), counts.size()));
  }
  for (int r = 0; r < t.rows(); ++r) {
    const auto& row = counts[static_cast<std::size_t>(r)];
    if (static_cast<int>(row.size()) != t.cols()) {
      throw Error(ErrorCode::validation, fmt::format("contingency row {} needs {} columns, got {}",
                                                     r + 1, t.cols(), row.size()));
    }
    for (int c = 0; c < t.cols(); ++c) {
      const auto v = row[static_cast<std::size_t>(c)];
      if (v < 0) {
        throw Error(ErrorCode::validation, fmt::format("negative count at ({}, {})", r + 1, c));
      }
      t.counts_[t.index(r, c)] = v;
      t.total_ += v;
    }
  }
  return t;
}

std::int64_t ContingencyTable::row_total(int r) const {
  std::int64_t s = 0;
  for (int c = 0; c < cols(); ++c) s += count(r, c);
  return s;
}

std::int64_t ContingencyTable::col_total(int c) const {
  std::int64_t s = 0;
  for (int r = 0; r < rows(); ++r) s += count(r, c);
  return s;
}

int ContingencyTable::nonempty_rows() const {
  int k = 0;
  for (int r = 0; r < rows(); ++r) k += row_total(r) > 0;
  return k;
}

int ContingencyTable::nonempty_cols() const {
  int k = 0;
  for (int c = 0; c < cols(); ++c) k += col_total(c) > 0;
  return k;
}

void ContingencyTable::add(int liking, int jar, std::int64_t weight) {
  check_pair({liking, jar});
  const int r = liking - LikingScore::kMin;
  const int c = folded_ ? std::abs(jar) : jar - JarScore::kMin;
  counts_[index(r, c)] += weight;
  total_ += weight;
}

ContingencyTable ContingencyTable::fold() const {
  if (folded_) return *this;
  ContingencyTable out(true);
  for (int r = 0; r < rows(); ++r) {
    for (int c = 0; c < cols(); ++c) {
      const auto v = count(r, c);
      if (v != 0) out.add(row_level(r), col_level(c), v);
    }
  }
  return out;
}

std::vector<ScorePair> ContingencyTable::expand() const {
  if (total_ > kMaxExpansion) {
    throw Error(ErrorCode::range, fmt::format("table of {} observations exceeds expansion cap {}",
                                              total_, kMaxExpansion));
  }
  std::vector<ScorePair> out;
  out.reserve(static_cast<std::size_t>(total_));
  for (int r = 0; r < rows(); ++r) {
    for (int c = 0; c < cols(); ++c) {
      for (std::int64_t k = 0; k < count(r, c); ++k) out.push_back({row_level(r), col_level(c)});
    }
  }
  return out;
}

ContingencyTable build_contingency(std::span<const ScorePair> pairs, bool fold) {
  ContingencyTable t(fold);
  for (const auto& p : pairs) t.add(p.liking, p.jar);
  return t;
}

PairCounts count_pairs_bruteforce(std::span<const ScorePair> pairs) {
  for (const auto& p : pairs) check_pair(p);
  PairCounts out;
  out.n = static_cast<std::int64_t>(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (i == j) continue;
      const int s = sign(pairs[i].liking - pairs[j].liking) *
                    sign(std::abs(pairs[i].jar) - std::abs(pairs[j].jar));
      if (s > 0) {
        ++out.concordant;
      } else if (s < 0) {
        ++out.discordant;
      } else {
        ++out.tied;
      }
    }
  }
  return out;
}

CellPairMass cell_pair_mass(const ContingencyTable& t) {
  const int rows = t.rows();
  const int cols = t.cols();
  CellPairMass mass;
  mass.concordant.assign(static_cast<std::size_t>(rows * cols), 0);
  mass.discordant.assign(static_cast<std::size_t>(rows * cols), 0);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      std::int64_t con = 0;
      std::int64_t dis = 0;
      for (int k = 0; k < rows; ++k) {
        if (k == i) continue;
        for (int l = 0; l < cols; ++l) {
          if (l == j) continue;
          if ((k > i) == (l > j)) {
            con += t.count(k, l);
          } else {
            dis += t.count(k, l);
          }
        }
      }
      const auto at = static_cast<std::size_t>(i * cols + j);
      mass.concordant[at] = con;
      mass.discordant[at] = dis;
    }
  }
  return mass;
}

PairCounts count_pairs_from_table(const ContingencyTable& t) {
  const auto mass = cell_pair_mass(t);
  PairCounts out;
  out.n = t.total();
  for (int i = 0; i < t.rows(); ++i) {
    for (int j = 0; j < t.cols(); ++j) {
      const auto at = static_cast<std::size_t>(i * t.cols() + j);
      out.concordant += t.count(i, j) * mass.concordant[at];
      out.discordant += t.count(i, j) * mass.discordant[at];
    }
  }
  out.tied = out.n * (out.n - 1) - out.concordant - out.discordant;
  return out;
}

int table_m(const ContingencyTable& t, MPolicy policy) {
  if (policy == MPolicy::fixed_scale) return std::min(t.rows(), t.cols());
  return std::min(t.nonempty_rows(), t.nonempty_cols());
}

TauResult tau_c(const ContingencyTable& t, MPolicy policy) {
  if (!t.folded()) return tau_c(t.fold(), policy);
  if (t.total() < 2) {
    throw Error(ErrorCode::insufficient_data,
                fmt::format("tau-c needs at least 2 observations, got {}", t.total()));
  }
  const int m = table_m(t, policy);
  if (m < 2) {
    throw Error(ErrorCode::degenerate_table,
                fmt::format("tau-c undefined: table spans only {} level(s) on one axis", m));
  }
  TauResult out;
  out.pairs = count_pairs_from_table(t);
  out.n = t.total();
  out.m = m;
  const double n = static_cast<double>(out.n);
  const double denom = n * n * (m - 1) / m;
  out.tau_c = static_cast<double>(out.pairs.concordant - out.pairs.discordant) / denom;
  return out;
}

TauResult tau_c(std::span<const ScorePair> pairs, MPolicy policy) {
  return tau_c(build_contingency(pairs, true), policy);
}

std::int64_t tie_free_pair_count(std::span<const ScorePair> pairs) {
  if (pairs.size() < 2) return 0;
  const auto c = count_pairs_from_table(build_contingency(pairs, true));
  return c.concordant + c.discordant;
}

}  // namespace jarcon
