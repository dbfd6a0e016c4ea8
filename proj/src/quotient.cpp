#include "geofol/ode/quotient.hpp"

#include <cmath>
#include <stdexcept>

namespace geofol {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_dim(const QuotientSpec& q, const ChartPoint& p) {
  if (q.kind == QuotientSpec::Kind::heisenberg && p.size() != 5)
    throw std::invalid_argument("heisenberg quotient expects 5-dim chart");
  if (q.kind == QuotientSpec::Kind::flat_torus &&
      (std::size_t)p.size() != q.periods.size())
    throw std::invalid_argument("flat torus period list does not match dim");
}
}  // namespace

QuotientSpec QuotientSpec::trivial(int dim) {
  QuotientSpec q;
  q.kind = Kind::none;
  q.periods.assign((std::size_t)dim, 0.0);
  return q;
}

QuotientSpec QuotientSpec::heisenberg_torus() {
  QuotientSpec q;
  q.kind = Kind::heisenberg;
  return q;
}

QuotientSpec QuotientSpec::torus(std::vector<double> periods) {
  QuotientSpec q;
  q.kind = Kind::flat_torus;
  q.periods = std::move(periods);
  return q;
}

int QuotientSpec::word_size() const {
  switch (kind) {
    case Kind::heisenberg:
      return 5;
    case Kind::flat_torus:
      return (int)periods.size();
    case Kind::none:
      return (int)periods.size();
  }
  return 0;
}

Word identity_word(const QuotientSpec& q) {
  return Word::Zero(q.word_size());
}

ChartPoint act(const QuotientSpec& q, const Word& w, const ChartPoint& p) {
  require_dim(q, p);
  ChartPoint r = p;
  switch (q.kind) {
    case QuotientSpec::Kind::heisenberg:
      r[0] += (double)w[0];
      r[1] += (double)w[1];
      r[2] += (double)w[2] + (double)w[0] * p[1];
      r[3] += kTwoPi * (double)w[3];
      r[4] += kTwoPi * (double)w[4];
      break;
    case QuotientSpec::Kind::flat_torus:
      for (Eigen::Index i = 0; i < p.size(); ++i)
        r[i] += q.periods[(std::size_t)i] * (double)w[i];
      break;
    case QuotientSpec::Kind::none:
      break;
  }
  return r;
}

Vec act_diff(const QuotientSpec& q, const Word& w, const ChartPoint& base,
             const Vec& v) {
  (void)base;
  Vec r = v;
  if (q.kind == QuotientSpec::Kind::heisenberg) r[2] += (double)w[0] * v[1];
  return r;
}

Word compose(const QuotientSpec& q, const Word& w1, const Word& w2) {
  Word w = w1 + w2;
  if (q.kind == QuotientSpec::Kind::heisenberg) w[2] += w1[0] * w2[1];
  return w;
}

Word inverse(const QuotientSpec& q, const Word& w) {
  Word r = -w;
  if (q.kind == QuotientSpec::Kind::heisenberg) r[2] += w[0] * w[1];
  return r;
}

Reduced reduce(const QuotientSpec& q, const ChartPoint& p) {
  require_dim(q, p);
  Reduced out;
  out.word = Word::Zero(q.word_size());
  switch (q.kind) {
    case QuotientSpec::Kind::heisenberg: {
      Word& w = out.word;
      w[0] = -(long)std::floor(p[0]);
      w[1] = -(long)std::floor(p[1]);
      w[2] = -(long)std::floor(p[2] + (double)w[0] * p[1]);
      w[3] = -(long)std::floor(p[3] / kTwoPi);
      w[4] = -(long)std::floor(p[4] / kTwoPi);
      out.rep = act(q, w, p);
      break;
    }
    case QuotientSpec::Kind::flat_torus: {
      for (Eigen::Index i = 0; i < p.size(); ++i) {
        const double T = q.periods[(std::size_t)i];
        if (T > 0) out.word[i] = -(long)std::floor(p[i] / T);
      }
      out.rep = act(q, out.word, p);
      break;
    }
    case QuotientSpec::Kind::none:
      out.rep = p;
      break;
  }
  return out;
}

namespace {

// Enumerates {-1,0,1}^k over the "active" word slots (all five for the
// Heisenberg lattice, periodic coordinates for a torus) and reports the word
// minimizing |act(w, a) - b|.
template <typename Fn>
void for_each_shell_word(const QuotientSpec& q, Fn&& fn) {
  const int n = q.word_size();
  std::vector<int> active;
  if (q.kind == QuotientSpec::Kind::heisenberg) {
    active = {0, 1, 2, 3, 4};
  } else if (q.kind == QuotientSpec::Kind::flat_torus) {
    for (int i = 0; i < n; ++i)
      if (q.periods[(std::size_t)i] > 0) active.push_back(i);
  }
  Word w = Word::Zero(n);
  const std::size_t m = active.size();
  const long total = (long)std::pow(3.0, (double)m);
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (std::size_t j = 0; j < m; ++j) {
      w[active[j]] = (c % 3) - 1;
      c /= 3;
    }
    fn(w);
  }
}

}  // namespace

double quotient_distance(const QuotientSpec& q, const ChartPoint& p,
                         const ChartPoint& r) {
  if (q.kind == QuotientSpec::Kind::none) return (p - r).norm();
  const ChartPoint a = reduce(q, p).rep;
  const ChartPoint b = reduce(q, r).rep;
  double best = (a - b).norm();
  for_each_shell_word(q, [&](const Word& w) {
    best = std::min(best, (act(q, w, a) - b).norm());
  });
  return best;
}

Word matching_word(const QuotientSpec& q, const ChartPoint& from,
                   const ChartPoint& to) {
  if (q.kind == QuotientSpec::Kind::none) return identity_word(q);
  const Reduced rf = reduce(q, from);
  const Reduced rt = reduce(q, to);
  Word best = identity_word(q);
  double best_d = (rf.rep - rt.rep).norm();
  for_each_shell_word(q, [&](const Word& w) {
    const double d = (act(q, w, rf.rep) - rt.rep).norm();
    if (d < best_d) {
      best_d = d;
      best = w;
    }
  });
  // act(best, rf.rep) ~ rt.rep, rf.rep = act(rf.word, from),
  // to = act(rt.word^-1, rt.rep)  =>  total = rt.word^-1 * best * rf.word.
  return compose(q, inverse(q, rt.word), compose(q, best, rf.word));
}

}  // namespace geofol
