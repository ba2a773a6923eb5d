#include "contact9/model/validate.hpp"

#include "contact9/classes/char_classes.hpp"
#include "contact9/errors.hpp"
#include "contact9/smith.hpp"

#include <sstream>

namespace contact9::model {

bool ValidationReport::has(const std::string& check) const {
  for (const auto& v : violations) {
    if (v.check == check) return true;
  }
  return false;
}

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream out;
  const Violation& v = violations.front();
  out << violations.size() << " violation(s); first: " << v.check;
  if (v.degree >= 0) out << " in degree " << v.degree;
  if (!v.witness.empty()) out << " at " << v.witness;
  out << ": " << v.message;
  return out.str();
}

namespace {

class Checker {
 public:
  Checker(const CohomologyModel& m, ValidationReport& r) : m_(m), r_(r) {}

  void run() {
    if (m_.dimension() < 0) {
      add("structure", -1, "", "model has no degrees");
      return;
    }
    groups();
    if (!r_.ok()) return;
    squares();
    bockstein();
    products();
    pairing();
    integral_products();
    orientation();
  }

 private:
  std::string name2(int d, std::size_t i) const { return m_.piece(d).f2_basis[i]; }
  std::string namez(int d, std::size_t g) const {
    return "H^" + std::to_string(d) + "(Z) generator " + std::to_string(g);
  }
  std::string any_name(int d) const { return m_.dim2(d) > 0 ? name2(d, 0) : "H^" + std::to_string(d); }
  void add(std::string check, int d, std::string witness, std::string message) {
    r_.violations.push_back({std::move(check), d, std::move(witness), std::move(message)});
  }

  void groups() {
    const int n = m_.dimension();
    const GradedPiece& p0 = m_.piece(0);
    if (p0.z_rank != 1 || !p0.z_torsion.empty() || p0.f2_dim() != 1 || !m_.rho2(m_.basis_z(0, 0)).v.get(0)) {
      add("h0", 0, any_name(0), "H^0 must be Z with rho2 onto F2");
    }
    for (int d = 0; d <= n; ++d) {
      const auto& t = m_.piece(d).z_torsion;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 2 || (i > 0 && t[i] % t[i - 1] != 0)) add("torsion_chain", d, namez(d, m_.piece(d).z_rank + i), "torsion orders must be >= 2 and form a divisibility chain");
      }
      auto even = [&](int e) {
        std::size_t c = 0;
        if (e > n) return c;
        for (const auto& x : m_.piece(e).z_torsion) c += x % 2 == 0 ? 1 : 0;
        return c;
      };
      const std::size_t expected = m_.piece(d).z_rank + even(d) + even(d + 1);
      if (expected != m_.dim2(d)) {
        add("universal_coefficients", d, any_name(d), "dim H^d(F2) = " + std::to_string(m_.dim2(d)) + " but the integral groups give " + std::to_string(expected));
      }
    }
  }

  void squares() {
    const int n = m_.dimension();
    for (int d = 0; d <= n; ++d) {
      for (std::size_t i = 0; i < m_.dim2(d); ++i) {
        const Mod2Class x = m_.basis2(d, i);
        if (m_.sq(0, x) != x) add("sq0_identity", d, name2(d, i), "Sq^0 x != x");
        for (int k = d + 1; d + k <= n; ++k) {
          if (!m_.sq(k, x).is_zero()) add("sq_unstable", d, name2(d, i), "Sq^" + std::to_string(k) + " x != 0 above the degree");
        }
        if (2 * d <= n && m_.sq(d, x) != m_.cup(x, x)) add("sq_top_square", d, name2(d, i), "Sq^d x != x^2");
        if (!m_.sq(1, m_.sq(1, x)).is_zero()) add("adem", d, name2(d, i), "Sq^1 Sq^1 x != 0");
        if (m_.sq(2, m_.sq(2, x)) != m_.sq(3, m_.sq(1, x))) add("adem", d, name2(d, i), "Sq^2 Sq^2 x != Sq^3 Sq^1 x");
      }
    }
    for (int i = 0; i <= n; ++i) {
      for (int j = i; i + j <= n; ++j) {
        for (std::size_t a = 0; a < m_.dim2(i); ++a) {
          for (std::size_t b = 0; b < m_.dim2(j); ++b) {
            const Mod2Class x = m_.basis2(i, a);
            const Mod2Class y = m_.basis2(j, b);
            for (int k = 1; i + j + k <= n; ++k) {
              Mod2Class rhs = m_.zero2(i + j + k);
              for (int s = 0; s <= k; ++s) rhs.v += m_.cup(m_.sq(s, x), m_.sq(k - s, y)).v;
              if (m_.sq(k, m_.cup(x, y)) != rhs) {
                add("cartan", i + j, name2(i, a) + "*" + name2(j, b), "Cartan formula fails for Sq^" + std::to_string(k));
              }
            }
          }
        }
      }
    }
  }

  void bockstein() {
    const int n = m_.dimension();
    for (int d = 0; d <= n; ++d) {
      for (std::size_t g = 0; g < m_.rank_z(d); ++g) {
        const IntClass z = m_.basis_z(d, g);
        if (d < n && !m_.beta(m_.rho2(z)).is_zero()) add("beta_rho2", d, namez(d, g), "beta(rho2(z)) != 0");
        const Integer t = m_.order(d, g);
        if (t != 0 && t % 2 == 1 && !m_.rho2(z).is_zero()) add("rho2_odd_torsion", d, namez(d, g), "rho2 of odd torsion must vanish");
      }
      if (d == n) continue;
      bool socle = true;
      for (std::size_t i = 0; i < m_.dim2(d); ++i) {
        const Mod2Class x = m_.basis2(d, i);
        const IntClass b = m_.beta(x);
        if (m_.rho2(b) != m_.sq(1, x)) add("rho2_beta", d, name2(d, i), "rho2(beta(x)) != Sq^1 x");
        for (std::size_t g = 0; g < b.c.size(); ++g) {
          if (b.c[g] == 0) continue;
          const Integer t = m_.order(d + 1, g);
          if (t == 0 || t % 2 != 0 || b.c[g] != t / 2) {
            add("beta_two_torsion", d, name2(d, i), "beta(x) is not an element of order 2");
            socle = false;
          }
        }
      }
      if (!socle) continue;
      // rho2(H^d) = ker beta
      std::vector<F2Vector> image;
      for (std::size_t g = 0; g < m_.rank_z(d); ++g) image.push_back(m_.rho2(m_.basis_z(d, g)).v);
      const auto kernel = classes::bockstein_matrix(m_, d).kernel();
      if (!same_span(m_.dim2(d), image, kernel)) {
        F2Echelon e(m_.dim2(d));
        for (const auto& v : image) e.insert(v);
        std::string witness = any_name(d);
        for (const auto& k : kernel) {
          if (!e.contains(k)) witness = m_.describe({d, k});
        }
        add("exactness", d, witness, "rho2(H^d(Z)) differs from ker beta");
      }
    }
    if (n >= 0) {
      for (std::size_t g = 0; g < m_.rank_z(n); ++g) {
        const Integer t = m_.order(n, g);
        if (t != 0 && t % 2 == 0 && m_.rho2(m_.basis_z(n, g)).is_zero()) {
          add("exactness", n, namez(n, g), "even torsion in the top degree reduces to zero");
        }
      }
    }
  }

  void products() {
    const int n = m_.dimension();
    const Mod2Class one = m_.basis2(0, 0);
    for (int i = 0; i <= n; ++i) {
      for (std::size_t a = 0; a < m_.dim2(i); ++a) {
        const Mod2Class x = m_.basis2(i, a);
        if (m_.cup(one, x) != x || m_.cup(x, one) != x) add("cup_unit", i, name2(i, a), "1 is not a unit for x");
        for (int j = 0; i + j <= n; ++j) {
          for (std::size_t b = 0; b < m_.dim2(j); ++b) {
            const Mod2Class y = m_.basis2(j, b);
            if (m_.cup(x, y) != m_.cup(y, x)) add("cup_commutative", i + j, name2(i, a) + "*" + name2(j, b), "xy != yx");
            for (int k = 1; i + j + k <= n; ++k) {
              for (std::size_t c = 0; c < m_.dim2(k); ++c) {
                const Mod2Class z = m_.basis2(k, c);
                if (m_.cup(m_.cup(x, y), z) != m_.cup(x, m_.cup(y, z))) {
                  add("cup_associative", i + j + k, name2(i, a) + "*" + name2(j, b) + "*" + name2(k, c), "(xy)z != x(yz)");
                }
              }
            }
          }
        }
      }
    }
  }

  void pairing() {
    const int n = m_.dimension();
    if (m_.eval2().size() != m_.dim2(n) || m_.eval2().is_zero()) {
      add("fundamental_class", n, any_name(n), "evaluation on [M] is zero");
      return;
    }
    for (int i = 0; i <= n; ++i) {
      F2Matrix p(m_.dim2(n - i), m_.dim2(i));
      for (std::size_t a = 0; a < m_.dim2(i); ++a) {
        for (std::size_t b = 0; b < m_.dim2(n - i); ++b) p.set(b, a, m_.eval2(m_.cup(m_.basis2(i, a), m_.basis2(n - i, b))));
      }
      if (p.rows() != p.cols()) {
        add("poincare_pairing", i, any_name(i), "dim H^" + std::to_string(i) + " != dim H^" + std::to_string(n - i));
        continue;
      }
      const auto kernel = p.kernel();
      if (!kernel.empty()) add("poincare_pairing", i, m_.describe({i, kernel.front()}), "mod-2 Poincare pairing is degenerate");
    }
  }

  void integral_products() {
    const int n = m_.dimension();
    for (const auto& [key, table] : m_.cupz_table()) {
      const auto [i, j] = key;
      for (std::size_t g = 0; g < m_.rank_z(i); ++g) {
        for (std::size_t h = 0; h < m_.rank_z(j); ++h) {
          const IntClass u = m_.basis_z(i, g);
          const IntClass v = m_.basis_z(j, h);
          const IntClass uv = m_.cup_z(u, v);
          if (m_.rho2(uv) != m_.cup(m_.rho2(u), m_.rho2(v))) add("cupz_reduction", i + j, namez(i, g) + " * " + namez(j, h), "rho2(uv) != rho2(u) rho2(v)");
          if (m_.has_cupz(j, i) && i + j <= n) {
            const IntClass vu = m_.cup_z(v, u);
            if (vu != ((i * j) % 2 == 0 ? uv : m_.negate(uv))) add("cupz_commutative", i + j, namez(i, g) + " * " + namez(j, h), "uv != (-1)^{ij} vu");
          }
        }
      }
    }
    for (int k = 0; k <= n; ++k) {
      if (!m_.has_cupz(k, n - k)) add("cupz_missing", k, "H^" + std::to_string(k), "integral pairing H^k x H^{n-k} is not stored");
    }
    if (n == kManifoldDimension && !m_.has_cupz(2, 6)) add("cupz_missing", 2, "H^2", "integral product H^2 x H^6 is not stored");
    if (!m_.orientable()) return;
    for (int k = 0; k <= n; ++k) {
      if (!m_.has_cupz(k, n - k)) continue;
      const std::size_t f = m_.piece(k).z_rank;
      if (f != m_.piece(n - k).z_rank) {
        add("integral_pairing", k, "H^" + std::to_string(k), "free ranks of H^k and H^{n-k} differ");
        continue;
      }
      IntMatrix p(f, f);
      for (std::size_t g = 0; g < m_.rank_z(k); ++g) {
        for (std::size_t h = 0; h < m_.rank_z(n - k); ++h) {
          const Integer e = m_.eval_z(m_.cup_z(m_.basis_z(k, g), m_.basis_z(n - k, h)));
          if (g < f && h < f) {
            p(g, h) = e;
          } else if (e != 0) {
            add("integral_pairing", k, namez(k, g), "torsion class pairs nontrivially with [M]");
          }
        }
      }
      const Integer det = determinant(p);
      if (det != 1 && det != -1) add("integral_pairing", k, "H^" + std::to_string(k), "integral Poincare pairing is not unimodular");
    }
  }

  void orientation() {
    const int n = m_.dimension();
    const GradedPiece& top = m_.piece(n);
    const bool z_top = top.z_rank == 1 && top.z_torsion.empty();
    const int s = m_.orientation_sign();
    if (s != 0 && s != 1 && s != -1) add("orientation", n, any_name(n), "orientation sign must be -1, 0 or 1");
    if (s != 0 && !z_top) add("orientation", n, any_name(n), "oriented model needs H^n = Z");
    if (z_top && s == 0) add("orientation", n, any_name(n), "H^n = Z but no orientation is recorded");
    if (s != 0 && z_top && !m_.eval2(m_.rho2(m_.basis_z(n, 0)))) add("orientation", n, any_name(n), "integral generator does not reduce to the mod-2 fundamental class");
  }

  const CohomologyModel& m_;
  ValidationReport& r_;
};

}  // namespace

ValidationReport validate(const CohomologyModel& m) {
  ValidationReport r;
  try {
    Checker(m, r).run();
  } catch (const std::exception& e) {
    r.violations.push_back({"structure", -1, "", e.what()});
  }
  return r;
}

ValidationReport validate(const ManifoldModel& mm) {
  ValidationReport r = validate(mm.cohomology);
  const CohomologyModel& m = mm.cohomology;
  auto add = [&](std::string check, int d, std::string witness, std::string message) {
    r.violations.push_back({std::move(check), d, std::move(witness), std::move(message)});
  };
  if (m.dimension() != kManifoldDimension) {
    add("dimension", m.dimension(), "", "manifold models are 9-dimensional");
    return r;
  }
  if (mm.phi_hat && (mm.phi_hat->degree != 5 || mm.phi_hat->v.size() != m.dim2(5))) add("phi_hat", 5, "phi_hat", "phi_hat must be a degree-5 class");
  if (mm.omega_pc && (mm.omega_pc->representative.degree != 8 || mm.omega_pc->representative.v.size() != m.dim2(8))) {
    add("omega_pc", 8, "omega_pc", "omega_pc must be a degree-8 class");
  }
  if (!r.ok()) return r;
  if (!m.orientable()) {
    add("orientable", 9, m.piece(9).f2_basis.empty() ? "" : m.piece(9).f2_basis[0], "model is not oriented");
    return r;
  }
  try {
    const classes::SWClasses sw = classes::sw_classes(mm);
    classes::compute_DM(mm, sw);
    if (sw.spinc()) {
      r.spinc_relations_checked = true;
      for (int k = 1; k <= 9; k += 2) {
        if (!sw[k].is_zero()) add("spinc_relations", k, m.describe(sw[k]), "w" + std::to_string(k) + " != 0 on a spin^c model");
      }
      if (sw[6] != m.sq(2, sw[4])) add("spinc_relations", 6, m.describe(sw[6]), "w6 != Sq^2 w4");
      const Mod2Class w2w4 = m.cup(sw[2], sw[4]);
      if (!w2w4.is_zero()) add("spinc_relations", 6, m.describe(w2w4), "w2 w4 != 0");
      const Mod2Class w2w6 = m.cup(sw[2], sw[6]);
      if (!w2w6.is_zero()) add("spinc_relations", 8, m.describe(w2w6), "w2 w6 != 0");
    }
  } catch (const ValidationError& e) {
    add("characteristic_classes", -1, "", e.what());
  } catch (const InternalInconsistency& e) {
    add("characteristic_classes", -1, "", e.what());
  }
  return r;
}

}  // namespace contact9::model
