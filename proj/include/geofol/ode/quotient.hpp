#pragma once

#include "geofol/core/types.hpp"

namespace geofol {

// Deck-transformation words are integer vectors.  For the Heisenberg-lattice
// quotient the entries are (a, b, c, kt, ku) acting on a chart point by
//   (x, y, z, t, u) -> (x + a, y + b, z + c + a*y, t + 2*pi*kt, u + 2*pi*ku),
// a nilpotent (non-abelian) group law; for a flat torus one entry per
// coordinate acts by translation.
using Word = Eigen::Matrix<long, Eigen::Dynamic, 1>;

struct QuotientSpec {
  enum class Kind { none, heisenberg, flat_torus };
  Kind kind = Kind::none;
  std::vector<double> periods;  // flat_torus only; 0 = coordinate not periodic

  static QuotientSpec trivial(int dim);
  static QuotientSpec heisenberg_torus();
  static QuotientSpec torus(std::vector<double> periods);

  int word_size() const;
};

struct Reduced {
  ChartPoint rep;  // representative in the fundamental domain
  Word word;       // rep = act(word, original point)
};

ChartPoint act(const QuotientSpec& q, const Word& w, const ChartPoint& p);
// Differential of the action at base (velocity transport).
Vec act_diff(const QuotientSpec& q, const Word& w, const ChartPoint& base,
             const Vec& v);
Word compose(const QuotientSpec& q, const Word& w1, const Word& w2);
Word inverse(const QuotientSpec& q, const Word& w);
Word identity_word(const QuotientSpec& q);

Reduced reduce(const QuotientSpec& q, const ChartPoint& p);

// Distance between orbit classes: both points are reduced, then the minimum
// Euclidean chart distance over a one-word shell of deck translates is taken.
double quotient_distance(const QuotientSpec& q, const ChartPoint& p,
                         const ChartPoint& r);

// Word w with act(w, from) closest to `to` (exact when the two points are
// within one shell of each other after reduction, which holds for the
// near-closure configurations this is used on).
Word matching_word(const QuotientSpec& q, const ChartPoint& from,
                   const ChartPoint& to);

}  // namespace geofol
