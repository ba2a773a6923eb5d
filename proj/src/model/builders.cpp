#include "contact9/model/builders.hpp"

#include "contact9/errors.hpp"
#include "contact9/simplicial/cohomology.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace contact9::model {

namespace {

using Exponents = std::vector<int>;

// Truncated polynomial algebra over F2 with all monomials enumerated.
class Algebra {
 public:
  explicit Algebra(const std::vector<PolynomialGenerator>& gens) : gens_(gens) {
    if (gens_.empty()) throw ContractViolation("polynomial model needs at least one generator");
    std::set<std::string> names;
    for (const auto& g : gens_) {
      if (g.degree < 1 || g.height < 2) throw ContractViolation("generator " + g.name + ": degree >= 1 and height >= 2 required");
      if (!names.insert(g.name).second) throw ContractViolation("duplicate generator name " + g.name);
      top_ += (g.height - 1) * g.degree;
    }
    Exponents e(gens_.size(), 0);
    while (true) {
      index_[e] = monomials_.size();
      monomials_.push_back(e);
      std::size_t i = 0;
      while (i < e.size() && ++e[i] == gens_[i].height) e[i++] = 0;
      if (i == e.size()) break;
    }
    by_degree_.resize(static_cast<std::size_t>(top_) + 1);
    for (std::size_t m = 0; m < monomials_.size(); ++m) by_degree_[static_cast<std::size_t>(degree(m))].push_back(m);
    for (auto& list : by_degree_) {
      std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) { return monomials_[a] > monomials_[b]; });
    }
    position_.resize(monomials_.size());
    for (const auto& list : by_degree_) {
      for (std::size_t p = 0; p < list.size(); ++p) position_[list[p]] = p;
    }
  }

  int top() const { return top_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<PolynomialGenerator>& gens() const { return gens_; }
  const Exponents& exponents(std::size_t m) const { return monomials_[m]; }
  const std::vector<std::size_t>& basis(int d) const { return by_degree_[static_cast<std::size_t>(d)]; }
  std::size_t position(std::size_t m) const { return position_[m]; }

  int degree(std::size_t m) const {
    int d = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i) d += monomials_[m][i] * gens_[i].degree;
    return d;
  }

  std::string name(std::size_t m) const {
    std::string out;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      const int e = monomials_[m][i];
      if (e == 0) continue;
      if (!out.empty()) out += "*";
      out += gens_[i].name;
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "1" : out;
  }

  std::optional<std::size_t> multiply(std::size_t a, std::size_t b) const {
    Exponents e = monomials_[a];
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] += monomials_[b][i];
      if (e[i] >= gens_[i].height) return std::nullopt;
    }
    return index_.at(e);
  }

  F2Vector multiply(const F2Vector& p, const F2Vector& q) const {
    F2Vector out(size());
    for (std::size_t a : p.support()) {
      for (std::size_t b : q.support()) {
        if (auto m = multiply(a, b)) out.flip(*m);
      }
    }
    return out;
  }

  F2Vector unit() const { return F2Vector::unit(size(), index_.at(Exponents(gens_.size(), 0))); }

  F2Vector parse(const std::string& text) const {
    F2Vector out(size());
    std::string s;
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    }
    if (s.empty() || s == "0") return out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const std::size_t end = std::min(s.find('+', pos), s.size());
      const std::string term = s.substr(pos, end - pos);
      if (term.empty()) throw ContractViolation("malformed polynomial '" + text + "'");
      Exponents e(gens_.size(), 0);
      std::size_t fpos = 0;
      while (fpos <= term.size()) {
        const std::size_t fend = std::min(term.find('*', fpos), term.size());
        std::string factor = term.substr(fpos, fend - fpos);
        int power = 1;
        if (auto caret = factor.find('^'); caret != std::string::npos) {
          power = std::stoi(factor.substr(caret + 1));
          factor = factor.substr(0, caret);
        }
        if (factor != "1") {
          auto it = std::find_if(gens_.begin(), gens_.end(), [&](const auto& g) { return g.name == factor; });
          if (it == gens_.end()) throw ContractViolation("unknown generator '" + factor + "' in '" + text + "'");
          e[static_cast<std::size_t>(it - gens_.begin())] += power;
        }
        fpos = fend + 1;
      }
      bool vanishes = false;
      for (std::size_t i = 0; i < e.size(); ++i) vanishes = vanishes || e[i] >= gens_[i].height;
      if (!vanishes) out.flip(index_.at(e));
      pos = end + 1;
    }
    return out;
  }

  // Koszul sign of reordering the product of monomials a and b.
  int koszul(std::size_t a, std::size_t b) const {
    int swaps = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        swaps += monomials_[a][i] * monomials_[b][j] * gens_[i].degree * gens_[j].degree;
      }
    }
    return swaps % 2 == 0 ? 1 : -1;
  }

 private:
  std::vector<PolynomialGenerator> gens_;
  int top_ = 0;
  std::vector<Exponents> monomials_;
  std::map<Exponents, std::size_t> index_;
  std::vector<std::vector<std::size_t>> by_degree_;
  std::vector<std::size_t> position_;
};

F2Vector restrict_to_degree(const Algebra& alg, const F2Vector& p, int d) {
  F2Vector out(alg.basis(d).size());
  for (std::size_t m : p.support()) {
    if (alg.degree(m) == d) out.set(alg.position(m), true);
  }
  return out;
}

std::string join_names(const std::string& a, const std::string& b) {
  if (a == "1") return b;
  if (b == "1") return a;
  return a + "*" + b;
}

void check_unique_names(const std::vector<GradedPiece>& graded) {
  std::set<std::string> seen;
  for (const auto& p : graded) {
    for (const auto& n : p.f2_basis) {
      if (!seen.insert(n).second) throw ContractViolation("basis name '" + n + "' is used twice");
    }
  }
}

}  // namespace

CohomologyModel polynomial_model(const std::vector<PolynomialGenerator>& generators) {
  const Algebra alg(generators);
  const int n = alg.top();

  std::vector<F2Vector> gen_sq;
  for (const auto& g : generators) gen_sq.push_back(alg.parse(g.total_sq));
  std::vector<F2Vector> total(alg.size());
  for (std::size_t m = 0; m < alg.size(); ++m) {
    F2Vector acc = alg.unit();
    for (std::size_t i = 0; i < generators.size(); ++i) {
      for (int e = 0; e < alg.exponents(m)[i]; ++e) acc = alg.multiply(acc, gen_sq[i]);
    }
    total[m] = std::move(acc);
  }
  auto sq_matrix = [&](int k, int d) {
    F2Matrix out(alg.basis(d + k).size(), alg.basis(d).size());
    for (std::size_t p = 0; p < alg.basis(d).size(); ++p) out.column(p) = restrict_to_degree(alg, total[alg.basis(d)[p]], d + k);
    return out;
  };

  // Integral structure from Sq^1.
  std::vector<std::vector<F2Vector>> torsion_images(static_cast<std::size_t>(n) + 1);
  std::vector<std::vector<F2Vector>> free_reps(static_cast<std::size_t>(n) + 1);
  for (int d = 0; d <= n; ++d) {
    const std::size_t dim = alg.basis(d).size();
    F2Echelon span(dim);
    if (d > 0) {
      const F2Matrix s = sq_matrix(1, d - 1);
      for (std::size_t i = 0; i < s.cols(); ++i) {
        if (!span.insert(s.column(i))) torsion_images[static_cast<std::size_t>(d)].push_back(s.column(i));
      }
    }
    const std::size_t image_rank = span.rank();
    std::vector<F2Vector> candidates;
    std::vector<F2Vector> kernel;
    if (d < n) {
      const F2Matrix s = sq_matrix(1, d);
      for (std::size_t i = 0; i < dim; ++i) {
        if (s.column(i).is_zero()) candidates.push_back(F2Vector::unit(dim, i));
      }
      kernel = s.kernel();
      for (const auto& v : kernel) candidates.push_back(v);
    } else {
      for (std::size_t i = 0; i < dim; ++i) candidates.push_back(F2Vector::unit(dim, i));
      for (std::size_t i = 0; i < dim; ++i) kernel.push_back(F2Vector::unit(dim, i));
    }
    for (const auto& c : candidates) {
      if (!span.insert(c)) free_reps[static_cast<std::size_t>(d)].push_back(c);
    }
    if (free_reps[static_cast<std::size_t>(d)].size() + image_rank != kernel.size()) {
      throw InternalInconsistency("Sq^1 does not square to zero in degree " + std::to_string(d));
    }
  }

  std::vector<GradedPiece> graded;
  for (int d = 0; d <= n; ++d) {
    GradedPiece p;
    p.z_rank = free_reps[static_cast<std::size_t>(d)].size();
    p.z_torsion.assign(torsion_images[static_cast<std::size_t>(d)].size(), Integer(2));
    for (std::size_t m : alg.basis(d)) p.f2_basis.push_back(alg.name(m));
    graded.push_back(std::move(p));
  }
  CohomologyModel model(graded);

  for (int d = 0; d <= n; ++d) {
    F2Matrix& r = model.rho2_matrix(d);
    std::size_t g = 0;
    for (const auto& v : free_reps[static_cast<std::size_t>(d)]) r.column(g++) = v;
    for (const auto& v : torsion_images[static_cast<std::size_t>(d)]) r.column(g++) = v;
  }
  for (int d = 0; d < n; ++d) {
    F2Echelon images(alg.basis(d + 1).size());
    for (const auto& v : torsion_images[static_cast<std::size_t>(d) + 1]) images.insert(v);
    const F2Matrix s = sq_matrix(1, d);
    const std::size_t free = model.piece(d + 1).z_rank;
    for (std::size_t i = 0; i < s.cols(); ++i) {
      auto combo = images.express(s.column(i));
      if (!combo) throw InternalInconsistency("Sq^1 image outside the torsion reductions");
      std::vector<Integer> coords(model.rank_z(d + 1));
      for (std::size_t t : combo->support()) coords[free + t] = 1;
      model.set_beta_entry(d, i, std::move(coords));
    }
  }
  for (int k = 0; k <= n; ++k) {
    for (int d = 0; d + k <= n; ++d) model.sq_matrix(k, d) = sq_matrix(k, d);
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      for (std::size_t a = 0; a < alg.basis(i).size(); ++a) {
        for (std::size_t b = 0; b < alg.basis(j).size(); ++b) {
          if (auto m = alg.multiply(alg.basis(i)[a], alg.basis(j)[b])) model.cup2_entry(i, a, j, b).set(alg.position(*m), true);
        }
      }
    }
  }
  model.set_eval2(F2Vector::unit(model.dim2(n), 0));
  const bool oriented = model.piece(n).z_rank == 1 && model.piece(n).z_torsion.empty();
  model.set_orientation_sign(oriented ? 1 : 0);

  bool torsion_free = true;
  for (const auto& p : model.graded()) torsion_free = torsion_free && p.z_torsion.empty();
  if (torsion_free) {
    for (const auto& g : generators) {
      if (g.degree % 2 == 1 && g.height > 2) {
        throw ContractViolation("odd generator " + g.name + " of height > 2 needs torsion");
      }
    }
    // Free generators are the monomials in basis order.
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; i + j <= n; ++j) {
        std::vector<std::vector<Integer>> table;
        for (std::size_t a = 0; a < alg.basis(i).size(); ++a) {
          for (std::size_t b = 0; b < alg.basis(j).size(); ++b) {
            std::vector<Integer> coords(model.rank_z(i + j));
            const std::size_t ma = alg.basis(i)[a];
            const std::size_t mb = alg.basis(j)[b];
            if (auto m = alg.multiply(ma, mb)) coords[alg.position(*m)] = alg.koszul(ma, mb);
            table.push_back(std::move(coords));
          }
        }
        model.set_cupz(i, j, std::move(table));
      }
    }
    return model;
  }

  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      const int d = i + j;
      const std::size_t free_d = model.piece(d).z_rank;
      std::vector<std::vector<Integer>> table;
      bool determined = true;
      F2Echelon images(model.dim2(d));
      for (const auto& v : torsion_images[static_cast<std::size_t>(d)]) images.insert(v);
      for (std::size_t g = 0; g < model.rank_z(i) && determined; ++g) {
        for (std::size_t h = 0; h < model.rank_z(j) && determined; ++h) {
          std::vector<Integer> coords(model.rank_z(d));
          const Mod2Class p = model.cup(model.rho2(model.basis_z(i, g)), model.rho2(model.basis_z(j, h)));
          if (i == 0 || j == 0) {
            coords = (i == 0 ? model.basis_z(j, h) : model.basis_z(i, g)).c;
          } else if (free_d == 0) {
            auto combo = images.express(p.v);
            if (!combo) throw InternalInconsistency("product reduction outside the torsion reductions");
            for (std::size_t t : combo->support()) coords[t] = 1;
          } else if (d == n && model.piece(n).z_rank == 1) {
            const bool torsion = g >= model.piece(i).z_rank || h >= model.piece(j).z_rank;
            if (!torsion) {
              if (model.piece(i).z_rank != 1 || model.piece(j).z_rank != 1 || !model.eval2(p)) {
                determined = false;
              } else {
                coords[0] = i <= j || (i * j) % 2 == 0 ? 1 : -1;
              }
            }
          } else {
            determined = false;
          }
          table.push_back(std::move(coords));
        }
      }
      if (determined) model.set_cupz(i, j, std::move(table));
    }
  }
  return model;
}

CohomologyModel point_model() {
  GradedPiece p;
  p.z_rank = 1;
  p.f2_basis = {"1"};
  CohomologyModel m({p});
  m.rho2_matrix(0) = F2Matrix::identity(1);
  m.sq_matrix(0, 0) = F2Matrix::identity(1);
  m.cup2_entry(0, 0, 0, 0) = F2Vector::unit(1, 0);
  m.set_cupz(0, 0, {{1}});
  m.set_eval2(F2Vector::unit(1, 0));
  m.set_orientation_sign(1);
  return m;
}

CohomologyModel build_product(const CohomologyModel& a, const CohomologyModel& b) {
  for (const auto* m : {&a, &b}) {
    for (const auto& p : m->graded()) {
      if (!p.z_torsion.empty()) throw ContractViolation("build_product: factor with torsion is not supported");
    }
  }
  const int na = a.dimension();
  const int nb = b.dimension();
  const int n = na + nb;
  // Basis of degree d: pairs (i, x, y) with deg x = i, deg y = d - i.
  struct Pair {
    int i;
    std::size_t x;
    std::size_t y;
  };
  std::vector<std::vector<Pair>> mod2(static_cast<std::size_t>(n) + 1), integral(static_cast<std::size_t>(n) + 1);
  std::map<std::tuple<int, int, std::size_t, std::size_t>, std::size_t> mod2_index, int_index;
  std::vector<GradedPiece> graded(static_cast<std::size_t>(n) + 1);
  for (int d = 0; d <= n; ++d) {
    auto& piece = graded[static_cast<std::size_t>(d)];
    for (int i = std::max(0, d - nb); i <= std::min(d, na); ++i) {
      for (std::size_t x = 0; x < a.dim2(i); ++x) {
        for (std::size_t y = 0; y < b.dim2(d - i); ++y) {
          mod2_index[{d, i, x, y}] = mod2[static_cast<std::size_t>(d)].size();
          mod2[static_cast<std::size_t>(d)].push_back({i, x, y});
          piece.f2_basis.push_back(join_names(a.piece(i).f2_basis[x], b.piece(d - i).f2_basis[y]));
        }
      }
      for (std::size_t x = 0; x < a.rank_z(i); ++x) {
        for (std::size_t y = 0; y < b.rank_z(d - i); ++y) {
          int_index[{d, i, x, y}] = integral[static_cast<std::size_t>(d)].size();
          integral[static_cast<std::size_t>(d)].push_back({i, x, y});
        }
      }
    }
    piece.z_rank = integral[static_cast<std::size_t>(d)].size();
  }
  check_unique_names(graded);
  CohomologyModel m(graded);

  // mod-2 tensor of two classes given as (degree, vector)
  auto tensor = [&](const Mod2Class& x, const Mod2Class& y) {
    const int d = x.degree + y.degree;
    F2Vector out(m.dim2(d));
    for (std::size_t p : x.v.support()) {
      for (std::size_t q : y.v.support()) out.flip(mod2_index.at({d, x.degree, p, q}));
    }
    return out;
  };

  for (int d = 0; d <= n; ++d) {
    const auto& gens = integral[static_cast<std::size_t>(d)];
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const auto& [i, x, y] = gens[g];
      m.rho2_matrix(d).column(g) = tensor(a.rho2(a.basis_z(i, x)), b.rho2(b.basis_z(d - i, y)));
    }
    const auto& basis = mod2[static_cast<std::size_t>(d)];
    for (int k = 0; d + k <= n; ++k) {
      for (std::size_t e = 0; e < basis.size(); ++e) {
        const auto& [i, x, y] = basis[e];
        F2Vector acc(m.dim2(d + k));
        for (int s = 0; s <= k; ++s) {
          if (i + s > na || d - i + k - s > nb) continue;
          acc += tensor(a.sq(s, a.basis2(i, x)), b.sq(k - s, b.basis2(d - i, y)));
        }
        m.sq_matrix(k, d).column(e) = acc;
      }
    }
  }
  for (int d = 0; d <= n; ++d) {
    for (int f = 0; d + f <= n; ++f) {
      for (std::size_t e = 0; e < mod2[static_cast<std::size_t>(d)].size(); ++e) {
        const auto& [i, x, y] = mod2[static_cast<std::size_t>(d)][e];
        for (std::size_t e2 = 0; e2 < mod2[static_cast<std::size_t>(f)].size(); ++e2) {
          const auto& [i2, x2, y2] = mod2[static_cast<std::size_t>(f)][e2];
          if (i + i2 > na || (d - i) + (f - i2) > nb) continue;
          m.cup2_entry(d, e, f, e2) = tensor(a.cup(a.basis2(i, x), a.basis2(i2, x2)), b.cup(b.basis2(d - i, y), b.basis2(f - i2, y2)));
        }
      }
    }
  }
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; p + q <= n; ++q) {
      bool available = true;
      std::vector<std::vector<Integer>> table;
      for (const auto& [i, x, y] : integral[static_cast<std::size_t>(p)]) {
        for (const auto& [i2, x2, y2] : integral[static_cast<std::size_t>(q)]) {
          std::vector<Integer> coords(m.rank_z(p + q));
          const int j = p - i;
          const int j2 = q - i2;
          if (i + i2 <= na && j + j2 <= nb) {
            if (!a.has_cupz(i, i2) || !b.has_cupz(j, j2)) {
              available = false;
              break;
            }
            const IntClass u = a.cup_z(a.basis_z(i, x), a.basis_z(i2, x2));
            const IntClass v = b.cup_z(b.basis_z(j, y), b.basis_z(j2, y2));
            const int sign = (j * i2) % 2 == 0 ? 1 : -1;
            for (std::size_t s = 0; s < u.c.size(); ++s) {
              for (std::size_t t = 0; t < v.c.size(); ++t) {
                if (u.c[s] != 0 && v.c[t] != 0) coords[int_index.at({p + q, i + i2, s, t})] += sign * u.c[s] * v.c[t];
              }
            }
          }
          table.push_back(std::move(coords));
        }
        if (!available) break;
      }
      if (available) m.set_cupz(p, q, std::move(table));
    }
  }
  m.set_eval2(tensor({na, a.eval2()}, {nb, b.eval2()}));
  m.set_orientation_sign(a.orientation_sign() * b.orientation_sign());
  return m;
}

namespace {

// Where a summand's generators land in the connected sum.
struct SummandMap {
  std::vector<std::vector<std::size_t>> mod2;
  std::vector<std::vector<std::size_t>> integral;
  Integer top_sign = 1;
};

std::string fresh_name(std::string name, const std::set<std::string>& used) {
  while (used.count(name)) name += "'";
  return name;
}

}  // namespace

ManifoldModel connected_sum(const ManifoldModel& ma, const ManifoldModel& mb) {
  const CohomologyModel& a = ma.cohomology;
  const CohomologyModel& b = mb.cohomology;
  const int n = kManifoldDimension;
  if (a.dimension() != n || b.dimension() != n) throw ContractViolation("connected_sum: both summands must be 9-dimensional");
  if (!a.orientable() || !b.orientable()) throw ContractViolation("connected_sum: summands must be oriented");
  for (const auto* m : {&a, &b}) {
    if (m->dim2(0) != 1 || m->dim2(n) != 1 || m->rank_z(0) != 1) throw ContractViolation("connected_sum: summand is not connected");
  }

  std::vector<GradedPiece> graded(static_cast<std::size_t>(n) + 1);
  SummandMap sa, sb;
  sa.mod2.resize(static_cast<std::size_t>(n) + 1);
  sa.integral.resize(static_cast<std::size_t>(n) + 1);
  sb.mod2 = sa.mod2;
  sb.integral = sa.integral;
  std::set<std::string> used;
  for (int d : {0, n}) {
    graded[static_cast<std::size_t>(d)] = a.piece(d);
    used.insert(a.piece(d).f2_basis[0]);
    sa.mod2[static_cast<std::size_t>(d)] = sb.mod2[static_cast<std::size_t>(d)] = {0};
    sa.integral[static_cast<std::size_t>(d)] = sb.integral[static_cast<std::size_t>(d)] = {0};
  }
  for (int d = 1; d < n; ++d) {
    for (const auto& name : a.piece(d).f2_basis) used.insert(name);
  }
  for (int d = 1; d < n; ++d) {
    GradedPiece& p = graded[static_cast<std::size_t>(d)];
    const GradedPiece& pa = a.piece(d);
    const GradedPiece& pb = b.piece(d);
    p.f2_basis = pa.f2_basis;
    for (std::size_t i = 0; i < pa.f2_dim(); ++i) sa.mod2[static_cast<std::size_t>(d)].push_back(i);
    for (std::size_t i = 0; i < pb.f2_dim(); ++i) {
      sb.mod2[static_cast<std::size_t>(d)].push_back(p.f2_basis.size());
      const std::string name = fresh_name(pb.f2_basis[i], used);
      used.insert(name);
      p.f2_basis.push_back(name);
    }
    p.z_rank = pa.z_rank + pb.z_rank;
    for (std::size_t g = 0; g < pa.z_rank; ++g) sa.integral[static_cast<std::size_t>(d)].push_back(g);
    for (std::size_t g = 0; g < pb.z_rank; ++g) sb.integral[static_cast<std::size_t>(d)].push_back(pa.z_rank + g);
    // stable merge of the torsion lists
    std::vector<std::pair<Integer, std::pair<int, std::size_t>>> torsion;
    for (std::size_t t = 0; t < pa.z_torsion.size(); ++t) torsion.push_back({pa.z_torsion[t], {0, t}});
    for (std::size_t t = 0; t < pb.z_torsion.size(); ++t) torsion.push_back({pb.z_torsion[t], {1, t}});
    std::stable_sort(torsion.begin(), torsion.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    sa.integral[static_cast<std::size_t>(d)].resize(pa.z_generators());
    sb.integral[static_cast<std::size_t>(d)].resize(pb.z_generators());
    for (std::size_t k = 0; k < torsion.size(); ++k) {
      if (k > 0 && torsion[k].first % torsion[k - 1].first != 0) {
        throw ContractViolation("connected_sum: torsion in degree " + std::to_string(d) + " is not a divisibility chain");
      }
      p.z_torsion.push_back(torsion[k].first);
      const auto [side, t] = torsion[k].second;
      auto& target = side == 0 ? sa.integral[static_cast<std::size_t>(d)] : sb.integral[static_cast<std::size_t>(d)];
      target[(side == 0 ? pa.z_rank : pb.z_rank) + t] = p.z_rank + k;
    }
  }
  sa.top_sign = 1;
  sb.top_sign = a.orientation_sign() * b.orientation_sign();

  CohomologyModel m(graded);
  auto map2 = [&](const SummandMap& s, const Mod2Class& x) {
    Mod2Class out = m.zero2(x.degree);
    for (std::size_t i : x.v.support()) out.v.flip(s.mod2[static_cast<std::size_t>(x.degree)][i]);
    return out;
  };
  auto mapz = [&](const SummandMap& s, const IntClass& z) {
    IntClass out = m.zero_z(z.degree);
    for (std::size_t g = 0; g < z.c.size(); ++g) {
      out.c[s.integral[static_cast<std::size_t>(z.degree)][g]] += z.degree == n ? z.c[g] * s.top_sign : z.c[g];
    }
    return m.normalize(std::move(out));
  };

  // Summand owning each new basis element in degrees 1..8 (0 = a, 1 = b).
  auto owner2 = [&](int d, std::size_t i) { return i < a.dim2(d) ? 0 : 1; };
  auto ownerz = [&](int d, std::size_t g) {
    const auto& ia = sa.integral[static_cast<std::size_t>(d)];
    return std::find(ia.begin(), ia.end(), g) != ia.end() ? 0 : 1;
  };
  auto source2 = [&](int d, std::size_t i) -> std::pair<int, std::size_t> {
    if (d == 0 || d == n) return {0, 0};
    return owner2(d, i) == 0 ? std::make_pair(0, i) : std::make_pair(1, i - a.dim2(d));
  };
  auto sourcez = [&](int d, std::size_t g) -> std::pair<int, std::size_t> {
    if (d == 0 || d == n) return {0, 0};
    const int side = ownerz(d, g);
    const auto& list = side == 0 ? sa.integral[static_cast<std::size_t>(d)] : sb.integral[static_cast<std::size_t>(d)];
    return {side, static_cast<std::size_t>(std::find(list.begin(), list.end(), g) - list.begin())};
  };
  const CohomologyModel* models[2] = {&a, &b};
  const SummandMap* maps[2] = {&sa, &sb};

  for (int d = 0; d <= n; ++d) {
    for (std::size_t g = 0; g < m.rank_z(d); ++g) {
      const auto [side, src] = sourcez(d, g);
      const CohomologyModel& s = *models[side];
      m.rho2_matrix(d).column(g) = map2(*maps[side], s.rho2(s.basis_z(d, src))).v;
    }
    for (std::size_t i = 0; i < m.dim2(d); ++i) {
      const auto [side, src] = source2(d, i);
      const CohomologyModel& s = *models[side];
      const Mod2Class x = s.basis2(d, src);
      if (d < n) m.set_beta_entry(d, i, mapz(*maps[side], s.beta(x)).c);
      for (int k = 0; d + k <= n; ++k) {
        const Mod2Class y = s.sq(k, x);
        // a degree-0 class only squares to itself; other targets stay in the summand
        m.sq_matrix(k, d).column(i) = map2(*maps[side], y).v;
      }
    }
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      for (std::size_t x = 0; x < m.dim2(i); ++x) {
        for (std::size_t y = 0; y < m.dim2(j); ++y) {
          auto [sx, ix] = source2(i, x);
          auto [sy, iy] = source2(j, y);
          if (i == 0) sx = sy;
          if (j == 0) sy = sx;
          if (sx != sy) continue;
          const CohomologyModel& s = *models[sx];
          m.cup2_entry(i, x, j, y) = map2(*maps[sx], s.cup(s.basis2(i, ix), s.basis2(j, iy))).v;
        }
      }
    }
  }
  for (const auto& [key, unused] : a.cupz_table()) {
    const auto [i, j] = key;
    if (!b.has_cupz(i, j)) continue;
    std::vector<std::vector<Integer>> table;
    for (std::size_t g = 0; g < m.rank_z(i); ++g) {
      for (std::size_t h = 0; h < m.rank_z(j); ++h) {
        auto [sg, ig] = sourcez(i, g);
        auto [sh, ih] = sourcez(j, h);
        if (i == 0) sg = sh;
        if (j == 0) sh = sg;
        if (sg != sh) {
          table.push_back(std::vector<Integer>(m.rank_z(i + j)));
          continue;
        }
        const CohomologyModel& s = *models[sg];
        table.push_back(mapz(*maps[sg], s.cup_z(s.basis_z(i, ig), s.basis_z(j, ih))).c);
      }
    }
    m.set_cupz(i, j, std::move(table));
  }
  m.set_eval2(a.eval2());
  m.set_orientation_sign(a.orientation_sign());

  ManifoldModel out;
  out.label = ma.label + "#" + mb.label;
  // phi_hat lives in H^5(F2); a summand with H^5 = 0 contributes zero
  auto phi = [](const ManifoldModel& x) -> std::optional<Mod2Class> {
    if (x.phi_hat) return x.phi_hat;
    if (x.cohomology.dim2(5) == 0) return x.cohomology.zero2(5);
    return std::nullopt;
  };
  const auto phi_a = phi(ma);
  const auto phi_b = phi(mb);
  if (phi_a && phi_b) out.phi_hat = Mod2Class{5, map2(sa, *phi_a).v + map2(sb, *phi_b).v};
  if (ma.omega_pc && mb.omega_pc && ma.omega_pc->determined && mb.omega_pc->determined) {
    out.omega_pc = OmegaDatum{{8, map2(sa, ma.omega_pc->representative).v + map2(sb, mb.omega_pc->representative).v}, true};
  }
  out.cohomology = std::move(m);
  return out;
}

CohomologyModel from_simplicial(const simplicial::SimplicialComplex& x) {
  using simplicial::Ring;
  const simplicial::SimplicialCohomology h(x);
  const int n = h.dimension();
  if (!x.is_mod2_pseudomanifold()) throw ValidationError("not a closed manifold: the complex is not a mod-2 pseudomanifold");
  std::vector<GradedPiece> graded;
  for (int d = 0; d <= n; ++d) {
    GradedPiece p;
    p.z_rank = h.integral(d).free_rank;
    p.z_torsion = h.integral(d).torsion;
    const std::size_t dim = h.mod2(d).generators();
    for (std::size_t i = 0; i < dim; ++i) p.f2_basis.push_back(dim == 1 ? "x" + std::to_string(d) : "x" + std::to_string(d) + "_" + std::to_string(i));
    graded.push_back(std::move(p));
  }
  if (graded[0].f2_dim() == 1) graded[0].f2_basis[0] = "1";
  CohomologyModel m(graded);
  auto bits = [](const simplicial::CohomologyClass& c) {
    F2Vector v(c.coords.size());
    for (std::size_t i = 0; i < c.coords.size(); ++i) v.set(i, c.coords[i] != 0);
    return v;
  };
  for (int d = 0; d <= n; ++d) {
    for (std::size_t g = 0; g < m.rank_z(d); ++g) m.rho2_matrix(d).column(g) = bits(h.reduce_mod(1, h.generator(d, Ring::integers(), g)));
    for (std::size_t i = 0; i < m.dim2(d); ++i) {
      const auto e = h.generator(d, Ring::mod2(), i);
      if (d < n) m.set_beta_entry(d, i, h.bockstein(1, e).coords);
      for (int k = 0; d + k <= n; ++k) m.sq_matrix(k, d).column(i) = bits(h.sq(k, e));
    }
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      for (std::size_t a = 0; a < m.dim2(i); ++a) {
        for (std::size_t b = 0; b < m.dim2(j); ++b) {
          m.cup2_entry(i, a, j, b) = bits(h.cup(h.generator(i, Ring::mod2(), a), h.generator(j, Ring::mod2(), b)));
        }
      }
      std::vector<std::vector<Integer>> table;
      for (std::size_t a = 0; a < m.rank_z(i); ++a) {
        for (std::size_t b = 0; b < m.rank_z(j); ++b) {
          table.push_back(h.cup(h.generator(i, Ring::integers(), a), h.generator(j, Ring::integers(), b)).coords);
        }
      }
      m.set_cupz(i, j, std::move(table));
    }
  }
  F2Vector ev(m.dim2(n));
  for (std::size_t i = 0; i < m.dim2(n); ++i) ev.set(i, h.evaluate_mod2(h.generator(n, Ring::mod2(), i)));
  m.set_eval2(ev);
  if (h.fundamental_cycle() && m.piece(n).z_rank == 1 && m.piece(n).z_torsion.empty()) {
    const Integer e = h.evaluate_integral(h.generator(n, Ring::integers(), 0));
    if (e != 1 && e != -1) throw InternalInconsistency("top generator does not evaluate to a unit");
    m.set_orientation_sign(e == 1 ? 1 : -1);
  }
  for (int i = 0; i <= n; ++i) {
    F2Matrix pairing(m.dim2(n - i), m.dim2(i));
    for (std::size_t a = 0; a < m.dim2(i); ++a) {
      for (std::size_t b = 0; b < m.dim2(n - i); ++b) pairing.set(b, a, m.eval2(m.cup(m.basis2(i, a), m.basis2(n - i, b))));
    }
    if (pairing.rows() != pairing.cols() || pairing.rank() != pairing.cols()) {
      throw ValidationError("not a closed manifold: mod-2 Poincare pairing is degenerate in degree " + std::to_string(i));
    }
  }
  return m;
}

ModelIso identity_iso(const CohomologyModel& m) {
  ModelIso iso;
  for (int d = 0; d <= m.dimension(); ++d) {
    iso.mod2.push_back(F2Matrix::identity(m.dim2(d)));
    iso.integral.push_back(IntMatrix::identity(m.rank_z(d)));
  }
  return iso;
}

ModelIso random_iso(const CohomologyModel& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ModelIso iso;
  for (int d = 0; d <= m.dimension(); ++d) {
    const std::size_t k = m.dim2(d);
    F2Matrix a;
    do {
      a = F2Matrix(k, k);
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) a.set(r, c, rng() % 2 == 1);
      }
    } while (a.rank() != k);
    iso.mod2.push_back(std::move(a));

    const GradedPiece& p = m.piece(d);
    std::vector<std::size_t> perm(p.z_generators());
    for (std::size_t g = 0; g < perm.size(); ++g) perm[g] = g;
    std::shuffle(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(p.z_rank), rng);
    // torsion generators move only among equal orders
    for (std::size_t s = p.z_rank; s < perm.size();) {
      std::size_t e = s;
      while (e < perm.size() && m.order(d, e) == m.order(d, s)) ++e;
      std::shuffle(perm.begin() + static_cast<std::ptrdiff_t>(s), perm.begin() + static_cast<std::ptrdiff_t>(e), rng);
      s = e;
    }
    IntMatrix z(perm.size(), perm.size());
    for (std::size_t g = 0; g < perm.size(); ++g) z(perm[g], g) = rng() % 2 == 0 ? 1 : -1;
    iso.integral.push_back(std::move(z));
  }
  return iso;
}

Mod2Class apply(const ModelIso& iso, const Mod2Class& x) {
  if (x.degree < 0 || x.degree >= static_cast<int>(iso.mod2.size())) return x;
  return {x.degree, iso.mod2[static_cast<std::size_t>(x.degree)].apply(x.v)};
}

IntClass apply(const ModelIso& iso, const IntClass& z) {
  if (z.degree < 0 || z.degree >= static_cast<int>(iso.integral.size())) return z;
  return {z.degree, iso.integral[static_cast<std::size_t>(z.degree)].apply(z.c)};
}

namespace {

void check_iso_shape(const CohomologyModel& m, const ModelIso& iso) {
  if (iso.mod2.size() != static_cast<std::size_t>(m.dimension()) + 1 || iso.integral.size() != iso.mod2.size()) {
    throw ContractViolation("isomorphism has the wrong number of degrees");
  }
  for (int d = 0; d <= m.dimension(); ++d) {
    const auto& a = iso.mod2[static_cast<std::size_t>(d)];
    const auto& z = iso.integral[static_cast<std::size_t>(d)];
    if (a.rows() != m.dim2(d) || a.cols() != m.dim2(d) || a.rank() != m.dim2(d)) {
      throw ContractViolation("mod-2 part of the isomorphism is not invertible in degree " + std::to_string(d));
    }
    if (z.rows() != m.rank_z(d) || z.cols() != m.rank_z(d)) throw ContractViolation("integral part has the wrong size");
    for (std::size_t c = 0; c < z.cols(); ++c) {
      std::size_t nonzero = 0;
      for (std::size_t r = 0; r < z.rows(); ++r) {
        if (z(r, c) == 0) continue;
        ++nonzero;
        if ((z(r, c) != 1 && z(r, c) != -1) || m.order(d, r) != m.order(d, c)) {
          throw ContractViolation("integral part is not an order-preserving signed permutation");
        }
      }
      if (nonzero != 1) throw ContractViolation("integral part is not a signed permutation");
    }
  }
}

}  // namespace

CohomologyModel relabel(const CohomologyModel& m, const ModelIso& iso) {
  check_iso_shape(m, iso);
  const int n = m.dimension();
  std::vector<F2Matrix> inv;
  std::vector<IntMatrix> zinv;
  for (int d = 0; d <= n; ++d) {
    inv.push_back(*iso.mod2[static_cast<std::size_t>(d)].inverse());
    zinv.push_back(iso.integral[static_cast<std::size_t>(d)].transpose());
  }
  auto back2 = [&](const Mod2Class& x) { return Mod2Class{x.degree, inv[static_cast<std::size_t>(x.degree)].apply(x.v)}; };
  auto backz = [&](const IntClass& z) { return m.normalize({z.degree, zinv[static_cast<std::size_t>(z.degree)].apply(z.c)}); };
  auto fwd2 = [&](const Mod2Class& x) { return apply(iso, x); };
  auto fwdz = [&](const IntClass& z) { return m.normalize(apply(iso, z)); };

  std::vector<GradedPiece> graded = m.graded();
  for (int d = 0; d <= n; ++d) {
    // names follow basis vectors that the relabeling only permutes
    const F2Matrix& a = iso.mod2[static_cast<std::size_t>(d)];
    auto& names = graded[static_cast<std::size_t>(d)].f2_basis;
    const auto old = names;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (a.column(c).popcount() == 1) names[a.column(c).lowest()] = old[c];
    }
    std::set<std::string> seen(names.begin(), names.end());
    if (seen.size() != names.size()) {
      for (std::size_t i = 0; i < names.size(); ++i) names[i] = old[i] + "~" + std::to_string(i);
    }
  }
  CohomologyModel out(graded);
  for (int d = 0; d <= n; ++d) {
    for (std::size_t g = 0; g < out.rank_z(d); ++g) out.rho2_matrix(d).column(g) = fwd2(m.rho2(backz(out.basis_z(d, g)))).v;
    for (std::size_t i = 0; i < out.dim2(d); ++i) {
      const Mod2Class x = back2(out.basis2(d, i));
      if (d < n) out.set_beta_entry(d, i, fwdz(m.beta(x)).c);
      for (int k = 0; d + k <= n; ++k) out.sq_matrix(k, d).column(i) = fwd2(m.sq(k, x)).v;
    }
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      for (std::size_t a = 0; a < out.dim2(i); ++a) {
        for (std::size_t b = 0; b < out.dim2(j); ++b) {
          out.cup2_entry(i, a, j, b) = fwd2(m.cup(back2(out.basis2(i, a)), back2(out.basis2(j, b)))).v;
        }
      }
    }
  }
  for (const auto& [key, unused] : m.cupz_table()) {
    const auto [i, j] = key;
    std::vector<std::vector<Integer>> table;
    for (std::size_t g = 0; g < out.rank_z(i); ++g) {
      for (std::size_t h = 0; h < out.rank_z(j); ++h) {
        table.push_back(fwdz(m.cup_z(backz(out.basis_z(i, g)), backz(out.basis_z(j, h)))).c);
      }
    }
    out.set_cupz(i, j, std::move(table));
  }
  F2Vector ev(out.dim2(n));
  for (std::size_t i = 0; i < out.dim2(n); ++i) ev.set(i, m.eval2(back2(out.basis2(n, i))));
  out.set_eval2(ev);
  if (m.orientable()) {
    out.set_orientation_sign(m.eval_z(backz(out.basis_z(n, 0))) == 1 ? 1 : -1);
  }
  return out;
}

ManifoldModel relabel(const ManifoldModel& m, const ModelIso& iso) {
  ManifoldModel out;
  out.cohomology = relabel(m.cohomology, iso);
  out.label = m.label;
  if (m.phi_hat) out.phi_hat = apply(iso, *m.phi_hat);
  if (m.omega_pc) out.omega_pc = OmegaDatum{apply(iso, m.omega_pc->representative), m.omega_pc->determined};
  return out;
}

std::vector<std::string> iso_violations(const ManifoldModel& ma, const ManifoldModel& mb, const ModelIso& iso) {
  const CohomologyModel& a = ma.cohomology;
  const CohomologyModel& b = mb.cohomology;
  std::vector<std::string> out;
  if (a.graded().size() != b.graded().size()) return {"dimensions differ"};
  for (int d = 0; d <= a.dimension(); ++d) {
    if (a.dim2(d) != b.dim2(d) || a.piece(d).z_rank != b.piece(d).z_rank || a.piece(d).z_torsion != b.piece(d).z_torsion) {
      out.push_back("groups differ in degree " + std::to_string(d));
    }
  }
  if (!out.empty()) return out;
  try {
    check_iso_shape(a, iso);
  } catch (const ContractViolation& e) {
    return {e.what()};
  }
  auto fwdz = [&](const IntClass& z) { return b.normalize(apply(iso, z)); };
  const int n = a.dimension();
  auto note = [&](const std::string& what, int d) { out.push_back(what + " in degree " + std::to_string(d)); };
  for (int d = 0; d <= n; ++d) {
    for (std::size_t g = 0; g < a.rank_z(d); ++g) {
      const IntClass z = a.basis_z(d, g);
      if (apply(iso, a.rho2(z)) != b.rho2(fwdz(z))) note("rho2 does not commute", d);
    }
    for (std::size_t i = 0; i < a.dim2(d); ++i) {
      const Mod2Class x = a.basis2(d, i);
      if (fwdz(a.beta(x)) != b.beta(apply(iso, x))) note("beta does not commute", d);
      for (int k = 0; d + k <= n; ++k) {
        if (apply(iso, a.sq(k, x)) != b.sq(k, apply(iso, x))) note("Sq^" + std::to_string(k) + " does not commute", d);
      }
      for (int j = 0; d + j <= n; ++j) {
        for (std::size_t y = 0; y < a.dim2(j); ++y) {
          const Mod2Class w = a.basis2(j, y);
          if (apply(iso, a.cup(x, w)) != b.cup(apply(iso, x), apply(iso, w))) note("mod-2 product does not commute", d);
        }
      }
    }
  }
  for (const auto& [key, unused] : a.cupz_table()) {
    const auto [i, j] = key;
    if (!b.has_cupz(i, j)) {
      note("integral product table missing", i);
      continue;
    }
    for (std::size_t g = 0; g < a.rank_z(i); ++g) {
      for (std::size_t h = 0; h < a.rank_z(j); ++h) {
        const IntClass u = a.basis_z(i, g);
        const IntClass v = a.basis_z(j, h);
        if (fwdz(a.cup_z(u, v)) != b.cup_z(fwdz(u), fwdz(v))) note("integral product does not commute", i);
      }
    }
  }
  for (std::size_t i = 0; i < a.dim2(n); ++i) {
    if (a.eval2(a.basis2(n, i)) != b.eval2(apply(iso, a.basis2(n, i)))) note("mod-2 evaluation differs", n);
  }
  if (a.orientable() != b.orientable()) {
    note("orientability differs", n);
  } else if (a.orientable() && a.eval_z(a.basis_z(n, 0)) != b.eval_z(fwdz(a.basis_z(n, 0)))) {
    note("orientation differs", n);
  }
  if (ma.phi_hat.has_value() != mb.phi_hat.has_value() || (ma.phi_hat && apply(iso, *ma.phi_hat) != *mb.phi_hat)) {
    note("phi_hat does not correspond", 5);
  }
  if (ma.omega_pc.has_value() != mb.omega_pc.has_value() ||
      (ma.omega_pc && (ma.omega_pc->determined != mb.omega_pc->determined ||
                       apply(iso, ma.omega_pc->representative) != mb.omega_pc->representative))) {
    note("omega datum does not correspond", 8);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace contact9::model
