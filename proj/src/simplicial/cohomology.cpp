#include "contact9/simplicial/cohomology.hpp"

#include "contact9/errors.hpp"
#include "contact9/simplicial/kernels.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace contact9::simplicial {

namespace {

IntMatrix coboundary_matrix(const SimplicialComplex& k, int d) {
  IntMatrix m(k.count(d + 1), k.count(d));
  if (d < 0 || d >= k.dimension()) return m;
  std::vector<int> face;
  const auto& cells = k.simplices(d + 1);
  for (std::size_t row = 0; row < cells.size(); ++row) {
    const Simplex& s = cells[row];
    for (std::size_t j = 0; j < s.size(); ++j) {
      face.clear();
      for (std::size_t t = 0; t < s.size(); ++t) {
        if (t != j) face.push_back(s[t]);
      }
      auto col = k.index_of(face);
      if (!col) throw InternalInconsistency("face missing from complex");
      m(row, *col) = j % 2 == 0 ? 1 : -1;
    }
  }
  return m;
}

Cochain from_vector(int degree, Ring ring, const std::vector<Integer>& v) { return Cochain::from_dense(degree, ring, v); }

F2Vector to_f2(const Cochain& c, std::size_t length) {
  F2Vector v(length);
  for (const auto& [i, value] : c.entries()) {
    if ((value & 1) != 0) v.set(i, true);
  }
  return v;
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

}  // namespace

bool CohomologyClass::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Integer& c) { return c == 0; });
}

// Generator of a Z/2^j group: either the reduction of an integral generator of
// H^d, or a Tor class coming from a torsion generator of H^{d+1}.
struct ModGenerator {
  bool from_tor = false;
  std::size_t source = 0;  // generator index in the normalized integral group
  Integer order;
};

struct SimplicialCohomology::Degree {
  int degree = 0;
  std::size_t cells = 0;
  IntMatrix delta;                 // C^d -> C^{d+1}
  SmithForm snf;                   // of delta
  IntMatrix kernel_left_inverse;   // L: C^d -> kernel coordinates
  IntMatrix quotient_left;         // P: kernel coordinates -> quotient coordinates
  std::vector<std::size_t> position;  // quotient coordinate of each normalized generator
  GradedGroup integral;
  std::vector<Cochain> torsion_witness;  // y_k with delta y_k = t_k z_k, degree d - 1
  GradedGroup mod2;
  std::vector<ModGenerator> mod2_layout;
  std::optional<F2QuotientBasis> mod2_quotient;
};

SimplicialCohomology::~SimplicialCohomology() = default;
SimplicialCohomology::SimplicialCohomology(SimplicialCohomology&&) noexcept = default;
SimplicialCohomology& SimplicialCohomology::operator=(SimplicialCohomology&&) noexcept = default;

namespace {

std::vector<ModGenerator> mod_layout(const GradedGroup& here, const GradedGroup* above, const Integer& n) {
  std::vector<ModGenerator> out;
  for (std::size_t g = 0; g < here.generators(); ++g) {
    const Integer t = here.order(g);
    const Integer order = t == 0 ? n : gcd(t, n);
    if (order > 1) out.push_back({false, g, order});
  }
  if (above != nullptr) {
    for (std::size_t g = above->free_rank; g < above->generators(); ++g) {
      const Integer order = gcd(above->order(g), n);
      if (order > 1) out.push_back({true, g, order});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ModGenerator& a, const ModGenerator& b) { return a.order < b.order; });
  return out;
}

}  // namespace

SimplicialCohomology::SimplicialCohomology(SimplicialComplex complex) : complex_(std::move(complex)) {
  const int dim = complex_.dimension();
  SmithTracking tracking{true, false, true, true};
  for (int d = 0; d <= dim; ++d) {
    auto deg = std::make_unique<Degree>();
    deg->degree = d;
    deg->cells = complex_.count(d);
    deg->delta = coboundary_matrix(complex_, d);
    deg->snf = smith_normal_form(deg->delta, tracking);
    const std::size_t r = deg->snf.rank();
    const std::size_t k = deg->cells - r;
    const IntMatrix kernel = deg->snf.right.col_block(r, deg->cells);
    deg->kernel_left_inverse = deg->snf.right_inverse.row_block(r, deg->cells);

    IntMatrix c = d == 0 ? IntMatrix(k, 0) : deg->kernel_left_inverse * degrees_[static_cast<std::size_t>(d - 1)]->delta;
    SmithForm csnf = smith_normal_form(c, SmithTracking{true, true, false, false});
    deg->quotient_left = csnf.left;
    const std::size_t s = csnf.rank();

    GradedGroup& h = deg->integral;
    h.degree = d;
    h.ring = Ring::integers();
    for (std::size_t i = s; i < k; ++i) deg->position.push_back(i);
    h.free_rank = k - s;
    for (std::size_t i = 0; i < s; ++i) {
      if (csnf.diagonal[i] != 1) {
        deg->position.push_back(i);
        h.torsion.push_back(csnf.diagonal[i]);
      }
    }
    for (std::size_t pos : deg->position) {
      h.basis_cocycles.push_back(from_vector(d, h.ring, kernel.apply(csnf.left_inverse.column(pos))));
    }
    if (d > 0) {
      const Degree& below = *degrees_[static_cast<std::size_t>(d - 1)];
      for (std::size_t g = h.free_rank; g < h.generators(); ++g) {
        auto target = h.basis_cocycles[g].scaled(h.order(g)).dense(deg->cells);
        auto y = solve_integer(below.snf, target);
        if (!y) throw InternalInconsistency("torsion generator is not torsion");
        deg->torsion_witness.push_back(from_vector(d - 1, h.ring, *y));
      }
    }
    degrees_.push_back(std::move(deg));
  }

  for (int d = 0; d <= dim; ++d) {
    Degree& deg = *degrees_[static_cast<std::size_t>(d)];
    const Degree* above = d < dim ? degrees_[static_cast<std::size_t>(d + 1)].get() : nullptr;
    deg.mod2_layout = mod_layout(deg.integral, above ? &above->integral : nullptr, Integer(2));
    GradedGroup& g = deg.mod2;
    g.degree = d;
    g.ring = Ring::mod2();
    std::vector<F2Vector> reps;
    for (const auto& m : deg.mod2_layout) {
      g.torsion.push_back(2);
      const Cochain& src = m.from_tor ? above->torsion_witness[m.source - above->integral.free_rank]
                                      : deg.integral.basis_cocycles[m.source];
      g.basis_cocycles.push_back(src.reduced(Ring::mod2()));
      reps.push_back(to_f2(g.basis_cocycles.back(), deg.cells));
    }
    std::vector<F2Vector> relations;
    if (d > 0) {
      const IntMatrix& below = degrees_[static_cast<std::size_t>(d - 1)]->delta;
      for (std::size_t col = 0; col < below.cols(); ++col) {
        F2Vector v(deg.cells);
        for (std::size_t row = 0; row < below.rows(); ++row) {
          if ((below(row, col) & 1) != 0) v.set(row, true);
        }
        relations.push_back(std::move(v));
      }
    }
    deg.mod2_quotient.emplace(deg.cells, relations, reps);

    // Dimension check against direct F2 ranks.
    F2Matrix delta2(deg.delta.rows(), deg.delta.cols());
    for (std::size_t row = 0; row < deg.delta.rows(); ++row) {
      for (std::size_t col = 0; col < deg.delta.cols(); ++col) {
        if ((deg.delta(row, col) & 1) != 0) delta2.set(row, col, true);
      }
    }
    const std::size_t boundary_rank = F2Matrix::from_columns(deg.cells, relations).rank();
    if (deg.cells - delta2.rank() - boundary_rank != reps.size()) {
      throw InternalInconsistency("mod-2 cohomology dimension disagrees with the universal coefficient count in degree " +
                                  std::to_string(d));
    }
  }

  if (dim >= 1) {
    const Degree& below = *degrees_[static_cast<std::size_t>(dim - 1)];
    SmithForm t = smith_normal_form(below.delta, SmithTracking{true, false, false, false});
    const std::size_t r = t.rank();
    if (below.delta.rows() == r + 1) {
      std::vector<Integer> row(below.delta.rows());
      bool units = true;
      for (std::size_t i = 0; i < row.size(); ++i) {
        row[i] = t.left(r, i);
        if (row[i] != 1 && row[i] != -1) units = false;
      }
      if (units) {
        if (row[0] < 0) {
          for (auto& v : row) v = -v;
        }
        fundamental_cycle_ = std::move(row);
      }
    }
  }
}

const SimplicialCohomology::Degree& SimplicialCohomology::at(int degree) const {
  if (degree < 0 || degree > dimension()) throw ContractViolation("degree " + std::to_string(degree) + " out of range");
  return *degrees_[static_cast<std::size_t>(degree)];
}

const GradedGroup& SimplicialCohomology::integral(int degree) const { return at(degree).integral; }
const GradedGroup& SimplicialCohomology::mod2(int degree) const { return at(degree).mod2; }

GradedGroup SimplicialCohomology::group(int degree, Ring ring) const {
  if (degree < 0 || degree > dimension()) {
    GradedGroup g;
    g.degree = degree;
    g.ring = ring;
    return g;
  }
  if (ring.integral()) return integral(degree);
  if (ring.exponent == 1) return mod2(degree);
  const Degree& deg = at(degree);
  const Degree* above = degree < dimension() ? &at(degree + 1) : nullptr;
  const Integer n = ring.modulus();
  GradedGroup g;
  g.degree = degree;
  g.ring = ring;
  for (const auto& m : mod_layout(deg.integral, above ? &above->integral : nullptr, n)) {
    g.torsion.push_back(m.order);
    if (m.from_tor) {
      const Cochain& y = above->torsion_witness[m.source - above->integral.free_rank];
      g.basis_cocycles.push_back(y.scaled(n / m.order).reduced(ring));
    } else {
      g.basis_cocycles.push_back(deg.integral.basis_cocycles[m.source].reduced(ring));
    }
  }
  return g;
}

std::size_t SimplicialCohomology::generator_count(int degree, Ring ring) const {
  if (degree < 0 || degree > dimension()) return 0;
  if (ring.integral()) return integral(degree).generators();
  if (ring.exponent == 1) return mod2(degree).generators();
  const Degree* above = degree < dimension() ? &at(degree + 1) : nullptr;
  return mod_layout(at(degree).integral, above ? &above->integral : nullptr, ring.modulus()).size();
}

CohomologyClass SimplicialCohomology::zero(int degree, Ring ring) const {
  return CohomologyClass{degree, ring, std::vector<Integer>(generator_count(degree, ring))};
}

CohomologyClass SimplicialCohomology::generator(int degree, Ring ring, std::size_t index) const {
  CohomologyClass c = zero(degree, ring);
  if (index >= c.coords.size()) throw ContractViolation("generator index out of range");
  c.coords[index] = 1;
  return c;
}

Cochain SimplicialCohomology::coboundary(const Cochain& c) const {
  const int d = c.degree();
  if (d >= dimension()) return Cochain(d + 1, c.ring());
  auto dense = c.ring().integral() ? c.dense(complex_.count(d)) : c.lifted().dense(complex_.count(d));
  auto out = kernels::coboundary_parallel(complex_, d, dense);
  return Cochain::from_dense(d + 1, c.ring(), out);
}

bool SimplicialCohomology::is_cocycle(const Cochain& c) const { return coboundary(c).is_zero(); }

CohomologyClass SimplicialCohomology::classify_integral(const Cochain& z) const {
  const Degree& deg = at(z.degree());
  auto kc = deg.kernel_left_inverse.apply(z.dense(deg.cells));
  auto qc = deg.quotient_left.apply(kc);
  CohomologyClass out{z.degree(), Ring::integers(), {}};
  for (std::size_t g = 0; g < deg.position.size(); ++g) {
    const Integer t = deg.integral.order(g);
    const Integer& v = qc[deg.position[g]];
    out.coords.push_back(t == 0 ? v : mod_floor(v, t));
  }
  return out;
}

CohomologyClass SimplicialCohomology::classify_mod2(const Cochain& c) const {
  const Degree& deg = at(c.degree());
  auto coords = deg.mod2_quotient->coordinates(to_f2(c, deg.cells));
  if (!coords) throw InternalInconsistency("mod-2 cocycle outside the span of cohomology representatives");
  CohomologyClass out{c.degree(), Ring::mod2(), {}};
  for (std::size_t i = 0; i < coords->size(); ++i) out.coords.emplace_back(coords->get(i) ? 1 : 0);
  return out;
}

CohomologyClass SimplicialCohomology::classify_mod2j(const Cochain& x) const {
  const Ring ring = x.ring();
  const Integer n = ring.modulus();
  const int d = x.degree();
  const Degree& deg = at(d);
  const Degree* above = d < dimension() ? &at(d + 1) : nullptr;
  const auto layout = mod_layout(deg.integral, above ? &above->integral : nullptr, n);

  // Tor part from the Bockstein of x.
  std::vector<Integer> tor(above ? above->integral.generators() : 0);
  Cochain adjusted = x;
  if (above != nullptr) {
    const CohomologyClass b = classify_integral(coboundary(x.lifted()).divided(n));
    for (std::size_t g = 0; g < above->integral.free_rank; ++g) {
      if (b.coords[g] != 0) throw InternalInconsistency("Bockstein of a mod-2^j cocycle has a free component");
    }
    for (std::size_t g = above->integral.free_rank; g < above->integral.generators(); ++g) {
      const Integer t = above->integral.order(g);
      const Integer gg = gcd(t, n);
      const Integer q = t / gg;
      if (b.coords[g] % q != 0) throw InternalInconsistency("Bockstein coefficient outside the image of Tor");
      tor[g] = mod_floor(b.coords[g] / q, gg);
      if (tor[g] != 0) {
        const Cochain& y = above->torsion_witness[g - above->integral.free_rank];
        adjusted -= y.scaled((n / gg) * tor[g]).reduced(ring);
      }
    }
  }

  // The remainder lifts to an integral cocycle.
  Cochain lift = adjusted.lifted();
  if (above != nullptr) {
    const Cochain b = coboundary(lift).divided(n);
    auto w = solve_integer(deg.snf, b.dense(above->cells));
    if (!w) throw InternalInconsistency("corrected mod-2^j cocycle does not lift");
    lift -= from_vector(d, Ring::integers(), *w).scaled(n);
  }
  const CohomologyClass z = classify_integral(lift);

  CohomologyClass out{d, ring, {}};
  for (const auto& m : layout) {
    out.coords.push_back(m.from_tor ? tor[m.source] : mod_floor(z.coords[m.source], m.order));
  }
  return out;
}

CohomologyClass SimplicialCohomology::classify(const Cochain& cocycle) const {
  const int d = cocycle.degree();
  if (d < 0 || d > dimension()) {
    if (!cocycle.is_zero()) throw ContractViolation("cochain degree out of range");
    return zero(d, cocycle.ring());
  }
  if (!is_cocycle(cocycle)) throw ContractViolation("classify: cochain is not a cocycle");
  if (cocycle.ring().integral()) return classify_integral(cocycle);
  if (cocycle.ring().exponent == 1) return classify_mod2(cocycle);
  return classify_mod2j(cocycle);
}

Cochain SimplicialCohomology::representative(const CohomologyClass& x) const {
  Cochain out(x.degree, x.ring);
  if (x.degree < 0 || x.degree > dimension()) return out;
  const GradedGroup g = group(x.degree, x.ring);
  if (g.generators() != x.coords.size()) throw ContractViolation("class does not match its group");
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (x.coords[i] != 0) out += g.basis_cocycles[i].scaled(x.coords[i]);
  }
  return out;
}

CohomologyClass SimplicialCohomology::add(const CohomologyClass& a, const CohomologyClass& b) const {
  if (a.degree != b.degree || a.ring != b.ring || a.coords.size() != b.coords.size()) {
    throw ContractViolation("adding classes of different groups");
  }
  const GradedGroup g = group(a.degree, a.ring);
  CohomologyClass out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) {
    out.coords[i] += b.coords[i];
    const Integer t = g.order(i);
    if (t != 0) out.coords[i] = mod_floor(out.coords[i], t);
  }
  return out;
}

CohomologyClass SimplicialCohomology::scale(const CohomologyClass& a, const Integer& factor) const {
  const GradedGroup g = group(a.degree, a.ring);
  CohomologyClass out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) {
    out.coords[i] *= factor;
    const Integer t = g.order(i);
    if (t != 0) out.coords[i] = mod_floor(out.coords[i], t);
  }
  return out;
}

CohomologyClass SimplicialCohomology::cup(const CohomologyClass& a, const CohomologyClass& b) const {
  if (a.ring != b.ring) throw ContractViolation("cup: ring mismatch");
  const int d = a.degree + b.degree;
  if (d > dimension()) return zero(d, a.ring);
  return classify(simplicial::cup(complex_, representative(a), representative(b)));
}

CohomologyClass SimplicialCohomology::sq(int k, const CohomologyClass& x) const {
  if (x.ring != Ring::mod2()) throw ContractViolation("Sq is defined on mod-2 classes");
  if (k < 0) throw ContractViolation("Sq^k needs k >= 0");
  const int n = x.degree;
  if (k > n || n + k > dimension()) return zero(n + k, x.ring);
  const Cochain r = representative(x);
  return classify(cup_i(complex_, r, r, n - k));
}

CohomologyClass SimplicialCohomology::bockstein(unsigned j, const CohomologyClass& x) const {
  if (j == 0 || x.ring != Ring::mod2(j)) throw ContractViolation("bockstein: class is not mod 2^j");
  const int d = x.degree + 1;
  if (d > dimension()) return zero(d, Ring::integers());
  const Cochain lifted = representative(x).lifted();
  return classify(coboundary(lifted).divided(pow2(j)));
}

CohomologyClass SimplicialCohomology::reduce_mod(unsigned j, const CohomologyClass& z) const {
  if (j == 0) throw ContractViolation("reduce_mod needs j >= 1");
  return classify(representative(z).reduced(Ring::mod2(j)));
}

bool SimplicialCohomology::evaluate_mod2(const CohomologyClass& x) const {
  if (x.degree != dimension() || x.ring != Ring::mod2()) throw ContractViolation("evaluate_mod2 needs a top mod-2 class");
  if (!complex_.is_mod2_pseudomanifold()) throw ContractViolation("complex is not a mod-2 pseudomanifold");
  return representative(x).entries().size() % 2 == 1;
}

const std::optional<std::vector<Integer>>& SimplicialCohomology::fundamental_cycle() const { return fundamental_cycle_; }

Integer SimplicialCohomology::evaluate_integral(const CohomologyClass& x) const {
  if (x.degree != dimension() || !x.ring.integral()) throw ContractViolation("evaluate_integral needs a top integral class");
  if (!fundamental_cycle_) throw ContractViolation("complex has no integral fundamental cycle");
  Integer acc = 0;
  const Cochain rep = representative(x);
  for (const auto& [i, v] : rep.entries()) acc += (*fundamental_cycle_)[i] * v;
  return acc;
}

std::vector<GradedGroup> cohomology(const SimplicialComplex& complex, Ring ring) {
  SimplicialCohomology h(complex);
  std::vector<GradedGroup> out;
  for (int d = 0; d <= h.dimension(); ++d) out.push_back(h.group(d, ring));
  return out;
}

Cochain coboundary(const SimplicialComplex& complex, const Cochain& x) {
  const int d = x.degree();
  if (d >= complex.dimension()) return Cochain(d + 1, x.ring());
  auto dense = x.ring().integral() ? x.dense(complex.count(d)) : x.lifted().dense(complex.count(d));
  return Cochain::from_dense(d + 1, x.ring(), kernels::coboundary_parallel(complex, d, dense));
}

Cochain cup(const SimplicialComplex& complex, const Cochain& x, const Cochain& y) {
  if (x.ring() != y.ring()) throw ContractViolation("cup: ring mismatch");
  const int p = x.degree();
  const int q = y.degree();
  if (p + q > complex.dimension()) return Cochain(p + q, x.ring());
  if (x.ring() == Ring::mod2()) return cup_i(complex, x, y, 0);
  auto xd = x.ring().integral() ? x.dense(complex.count(p)) : x.lifted().dense(complex.count(p));
  auto yd = y.ring().integral() ? y.dense(complex.count(q)) : y.lifted().dense(complex.count(q));
  return Cochain::from_dense(p + q, x.ring(), kernels::cup_parallel(complex, xd, p, yd, q));
}

Cochain cup_i(const SimplicialComplex& complex, const Cochain& x, const Cochain& y, int i) {
  if (x.ring() != Ring::mod2() || y.ring() != Ring::mod2()) throw ContractViolation("cup_i is defined only mod 2");
  if (i < 0) throw ContractViolation("cup_i needs i >= 0");
  const int p = x.degree();
  const int q = y.degree();
  const int n = p + q - i;
  if (n > complex.dimension() || n < std::max(p, q)) return Cochain(n, Ring::mod2());
  auto bits = kernels::cup_i_mod2_parallel(complex, x.bits(complex.count(p)), p, y.bits(complex.count(q)), q, i);
  return Cochain::from_bits(n, bits);
}

Cochain transport(const Cochain& x, const SimplicialComplex& from, const SimplicialComplex& to) {
  const int d = x.degree();
  if (from.count(d) != to.count(d)) throw ContractViolation("transport: complexes differ");
  std::map<VertexId, int> position;
  for (std::size_t i = 0; i < to.vertices().size(); ++i) position[to.vertices()[i]] = static_cast<int>(i);
  Cochain out(d, x.ring());
  std::vector<std::pair<int, int>> keyed;
  Simplex target;
  for (const auto& [index, value] : x.entries()) {
    keyed.clear();
    const Simplex& s = from.simplex(d, index);
    for (std::size_t t = 0; t < s.size(); ++t) {
      auto it = position.find(from.vertices()[static_cast<std::size_t>(s[t])]);
      if (it == position.end()) throw ContractViolation("transport: vertex sets differ");
      keyed.emplace_back(it->second, static_cast<int>(t));
    }
    // parity of the permutation sorting the new positions
    bool odd = false;
    for (std::size_t a = 0; a < keyed.size(); ++a) {
      for (std::size_t b = a + 1; b < keyed.size(); ++b) {
        if (keyed[a].first > keyed[b].first) odd = !odd;
      }
    }
    std::sort(keyed.begin(), keyed.end());
    target.clear();
    for (const auto& k : keyed) target.push_back(k.first);
    auto j = to.index_of(target);
    if (!j) throw ContractViolation("transport: simplex missing from target complex");
    out.set(*j, odd ? Integer(-value) : value);
  }
  return out;
}

}  // namespace contact9::simplicial
