#include "contact9/model/schema.hpp"

#include "contact9/errors.hpp"
#include "yaml_doc.hpp"

#include <limits>
#include <map>

namespace contact9::model {

using nlohmann::json;

json integer_json(const Integer& z) {
  if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max()) {
    return z.convert_to<std::int64_t>();
  }
  return z.str();
}

json integer_vector_json(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(integer_json(z));
  return out;
}

json class_names(const CohomologyModel& m, const Mod2Class& x) {
  json out = json::array();
  for (std::size_t i : x.v.support()) out.push_back(m.piece(x.degree).f2_basis[i]);
  return out;
}

json model_to_json(const ManifoldModel& mm) {
  const CohomologyModel& m = mm.cohomology;
  const int n = m.dimension();
  json j;
  j["schema_version"] = kModelSchemaVersion;
  j["kind"] = "manifold_model";
  j["label"] = mm.label;
  j["dimension"] = n;
  json graded = json::array();
  json rho2 = json::array();
  json beta = json::array();
  json sq = json::array();
  json cup2 = json::array();
  for (int d = 0; d <= n; ++d) {
    const GradedPiece& p = m.piece(d);
    graded.push_back({{"degree", d}, {"z_rank", p.z_rank}, {"z_torsion", integer_vector_json(p.z_torsion)}, {"f2_dim", p.f2_dim()}, {"f2_basis", p.f2_basis}});
    json columns = json::array();
    for (std::size_t g = 0; g < m.rank_z(d); ++g) columns.push_back(class_names(m, m.rho2(m.basis_z(d, g))));
    rho2.push_back({{"degree", d}, {"columns", columns}});
    for (std::size_t i = 0; i < m.dim2(d); ++i) {
      const Mod2Class x = m.basis2(d, i);
      if (d < n) {
        const IntClass b = m.beta(x);
        if (!b.is_zero()) beta.push_back({{"source", p.f2_basis[i]}, {"target", integer_vector_json(b.c)}});
      }
      for (int k = 0; d + k <= n; ++k) {
        const Mod2Class y = m.sq(k, x);
        if (!y.is_zero()) sq.push_back({{"k", k}, {"source", p.f2_basis[i]}, {"image", class_names(m, y)}});
      }
    }
  }
  for (int i = 0; i <= n; ++i) {
    for (int jd = 0; i + jd <= n; ++jd) {
      for (std::size_t a = 0; a < m.dim2(i); ++a) {
        for (std::size_t b = 0; b < m.dim2(jd); ++b) {
          const Mod2Class xy = m.cup(m.basis2(i, a), m.basis2(jd, b));
          if (!xy.is_zero()) cup2.push_back(json::array({m.piece(i).f2_basis[a], m.piece(jd).f2_basis[b], class_names(m, xy)}));
        }
      }
    }
  }
  json cupz = json::array();
  for (const auto& [key, table] : m.cupz_table()) {
    const auto [i, jd] = key;
    json entries = json::array();
    for (std::size_t g = 0; g < m.rank_z(i); ++g) {
      for (std::size_t h = 0; h < m.rank_z(jd); ++h) {
        const auto& value = table[g * m.rank_z(jd) + h];
        bool zero = true;
        for (const auto& z : value) zero = zero && z == 0;
        if (!zero) entries.push_back({{"left", g}, {"right", h}, {"value", integer_vector_json(value)}});
      }
    }
    cupz.push_back({{"degrees", {i, jd}}, {"entries", entries}});
  }
  j["graded"] = graded;
  j["rho2"] = rho2;
  j["beta"] = beta;
  j["sq"] = sq;
  j["cup2"] = cup2;
  j["cupZ"] = cupz;
  j["orientation"] = {{"integral_sign", m.orientation_sign()}, {"mod2", class_names(m, {n, m.eval2()})}};
  if (mm.phi_hat) j["phi_hat"] = class_names(m, *mm.phi_hat);
  if (mm.omega_pc) j["omega_pc"] = {{"representative", class_names(m, mm.omega_pc->representative)}, {"determined", mm.omega_pc->determined}};
  return j;
}

std::string emit_model(const ManifoldModel& m) { return model_to_json(m).dump(1); }

namespace {

class ModelReader {
 public:
  explicit ModelReader(const YAML::Node& root) : root_(root) {}

  ManifoldModel read() {
    const YAML::Node version = io::require(root_, "schema_version", "");
    if (io::as_int(version, "schema_version") != kModelSchemaVersion) {
      throw ParseError("schema_version", io::line_of(version), "unsupported schema version");
    }
    if (YAML::Node kind = root_["kind"]) {
      if (io::as_string(kind, "kind") != "manifold_model") throw ParseError("kind", io::line_of(kind), "expected kind manifold_model");
    }
    ManifoldModel out;
    if (YAML::Node label = root_["label"]) out.label = io::as_string(label, "label");
    const YAML::Node dim = io::require(root_, "dimension", "");
    const long long n = io::as_int(dim, "dimension");
    if (n < 0 || n > 64) throw ParseError("dimension", io::line_of(dim), "dimension out of range");
    n_ = static_cast<int>(n);
    read_graded();
    model_ = CohomologyModel(graded_);
    read_rho2();
    read_beta();
    read_sq();
    read_cup2();
    read_cupz();
    read_orientation();
    if (YAML::Node phi = root_["phi_hat"]) out.phi_hat = read_class(phi, "phi_hat");
    if (YAML::Node omega = root_["omega_pc"]) {
      io::expect_map(omega, "omega_pc");
      OmegaDatum d;
      d.representative = read_class(io::require(omega, "representative", "omega_pc"), "omega_pc.representative");
      d.determined = io::as_bool(io::require(omega, "determined", "omega_pc"), "omega_pc.determined");
      out.omega_pc = d;
    }
    if (out.phi_hat && out.phi_hat->degree != 5 && !out.phi_hat->is_zero()) {
      throw ParseError("phi_hat", io::line_of(root_["phi_hat"]), "phi_hat must have degree 5");
    }
    if (out.phi_hat && out.phi_hat->is_zero()) out.phi_hat = model_.zero2(5);
    if (out.omega_pc && out.omega_pc->representative.is_zero()) out.omega_pc->representative = model_.zero2(8);
    out.cohomology = std::move(model_);
    return out;
  }

 private:
  void read_graded() {
    const YAML::Node g = io::expect_sequence(io::require(root_, "graded", ""), "graded");
    if (g.size() != static_cast<std::size_t>(n_) + 1) throw ParseError("graded", io::line_of(g), "expected one entry per degree 0..dimension");
    for (std::size_t d = 0; d < g.size(); ++d) {
      const std::string path = io::index_path("graded", d);
      io::expect_map(g[d], path);
      if (io::as_int(io::require(g[d], "degree", path), path + ".degree") != static_cast<long long>(d)) {
        throw ParseError(path + ".degree", io::line_of(g[d]), "degrees must be listed in order 0..dimension");
      }
      GradedPiece p;
      p.z_rank = io::as_index(io::require(g[d], "z_rank", path), path + ".z_rank");
      const YAML::Node t = io::expect_sequence(io::require(g[d], "z_torsion", path), path + ".z_torsion");
      for (std::size_t i = 0; i < t.size(); ++i) p.z_torsion.push_back(io::as_integer(t[i], io::index_path(path + ".z_torsion", i)));
      const YAML::Node b = io::expect_sequence(io::require(g[d], "f2_basis", path), path + ".f2_basis");
      for (std::size_t i = 0; i < b.size(); ++i) {
        const std::string name = io::as_string(b[i], io::index_path(path + ".f2_basis", i));
        if (!where_.emplace(name, std::make_pair(static_cast<int>(d), i)).second) {
          throw ParseError(io::index_path(path + ".f2_basis", i), io::line_of(b[i]), "basis name '" + name + "' is used twice");
        }
        p.f2_basis.push_back(name);
      }
      if (YAML::Node f = g[d]["f2_dim"]) {
        if (io::as_index(f, path + ".f2_dim") != p.f2_basis.size()) throw ParseError(path + ".f2_dim", io::line_of(f), "f2_dim does not match f2_basis");
      }
      graded_.push_back(std::move(p));
    }
  }

  std::pair<int, std::size_t> basis(const YAML::Node& n, const std::string& path) {
    const std::string name = io::as_string(n, path);
    auto it = where_.find(name);
    if (it == where_.end()) throw ParseError(path, io::line_of(n), "unknown basis element '" + name + "'");
    return it->second;
  }

  // A class given as a list of basis names, all of one degree.
  Mod2Class read_class(const YAML::Node& n, const std::string& path, int expected_degree = -1) {
    io::expect_sequence(n, path);
    int degree = expected_degree;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n.size(); ++i) {
      const auto [d, k] = basis(n[i], io::index_path(path, i));
      if (degree >= 0 && d != degree) throw ParseError(io::index_path(path, i), io::line_of(n[i]), "basis element of the wrong degree");
      degree = d;
      idx.push_back(k);
    }
    if (degree < 0) degree = 0;
    Mod2Class x = model_.zero2(degree);
    for (std::size_t k : idx) x.v.flip(k);
    return x;
  }

  std::vector<Integer> read_coords(const YAML::Node& n, const std::string& path, std::size_t size) {
    io::expect_sequence(n, path);
    if (n.size() != size) throw ParseError(path, io::line_of(n), "expected " + std::to_string(size) + " coordinates");
    std::vector<Integer> out;
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(io::as_integer(n[i], io::index_path(path, i)));
    return out;
  }

  int degree_field(const YAML::Node& parent, const std::string& key, const std::string& path) {
    const YAML::Node node = io::require(parent, key, path);
    const long long d = io::as_int(node, io::child_path(path, key));
    if (d < 0 || d > n_) throw ParseError(io::child_path(path, key), io::line_of(node), "degree out of range");
    return static_cast<int>(d);
  }

  void read_rho2() {
    const YAML::Node r = io::expect_sequence(io::require(root_, "rho2", ""), "rho2");
    for (std::size_t e = 0; e < r.size(); ++e) {
      const std::string path = io::index_path("rho2", e);
      io::expect_map(r[e], path);
      const int d = degree_field(r[e], "degree", path);
      const YAML::Node cols = io::expect_sequence(io::require(r[e], "columns", path), path + ".columns");
      if (cols.size() != model_.rank_z(d)) throw ParseError(path + ".columns", io::line_of(cols), "expected one column per integral generator");
      for (std::size_t g = 0; g < cols.size(); ++g) {
        model_.rho2_matrix(d).column(g) = read_class(cols[g], io::index_path(path + ".columns", g), d).v;
      }
    }
  }

  void read_beta() {
    const YAML::Node b = io::expect_sequence(io::require(root_, "beta", ""), "beta");
    for (std::size_t e = 0; e < b.size(); ++e) {
      const std::string path = io::index_path("beta", e);
      io::expect_map(b[e], path);
      const YAML::Node src = io::require(b[e], "source", path);
      const auto [d, i] = basis(src, path + ".source");
      if (d >= n_) throw ParseError(path + ".source", io::line_of(src), "beta of a top-degree class");
      model_.set_beta_entry(d, i, read_coords(io::require(b[e], "target", path), path + ".target", model_.rank_z(d + 1)));
    }
  }

  void read_sq() {
    const YAML::Node s = io::expect_sequence(io::require(root_, "sq", ""), "sq");
    for (std::size_t e = 0; e < s.size(); ++e) {
      const std::string path = io::index_path("sq", e);
      io::expect_map(s[e], path);
      const YAML::Node knode = io::require(s[e], "k", path);
      const long long k = io::as_int(knode, path + ".k");
      const YAML::Node src = io::require(s[e], "source", path);
      const auto [d, i] = basis(src, path + ".source");
      if (k < 0 || d + k > n_) throw ParseError(path + ".k", io::line_of(knode), "Sq^k out of range");
      model_.sq_matrix(static_cast<int>(k), d).column(i) = read_class(io::require(s[e], "image", path), path + ".image", d + static_cast<int>(k)).v;
    }
  }

  void read_cup2() {
    const YAML::Node c = io::expect_sequence(io::require(root_, "cup2", ""), "cup2");
    for (std::size_t e = 0; e < c.size(); ++e) {
      const std::string path = io::index_path("cup2", e);
      io::expect_sequence(c[e], path);
      if (c[e].size() != 3) throw ParseError(path, io::line_of(c[e]), "expected [left, right, result]");
      const auto [i, a] = basis(c[e][0], path + "[0]");
      const auto [j, b] = basis(c[e][1], path + "[1]");
      if (i + j > n_) throw ParseError(path, io::line_of(c[e]), "product above the dimension");
      model_.cup2_entry(i, a, j, b) = read_class(c[e][2], path + "[2]", i + j).v;
    }
  }

  void read_cupz() {
    const YAML::Node c = io::expect_sequence(io::require(root_, "cupZ", ""), "cupZ");
    for (std::size_t e = 0; e < c.size(); ++e) {
      const std::string path = io::index_path("cupZ", e);
      io::expect_map(c[e], path);
      const YAML::Node degs = io::expect_sequence(io::require(c[e], "degrees", path), path + ".degrees");
      if (degs.size() != 2) throw ParseError(path + ".degrees", io::line_of(degs), "expected [i, j]");
      const long long i = io::as_int(degs[0], path + ".degrees[0]");
      const long long j = io::as_int(degs[1], path + ".degrees[1]");
      if (i < 0 || j < 0 || i + j > n_) throw ParseError(path + ".degrees", io::line_of(degs), "degree pair out of range");
      const int di = static_cast<int>(i);
      const int dj = static_cast<int>(j);
      std::vector<std::vector<Integer>> table(model_.rank_z(di) * model_.rank_z(dj), std::vector<Integer>(model_.rank_z(di + dj)));
      const YAML::Node entries = io::expect_sequence(io::require(c[e], "entries", path), path + ".entries");
      for (std::size_t k = 0; k < entries.size(); ++k) {
        const std::string ep = io::index_path(path + ".entries", k);
        io::expect_map(entries[k], ep);
        const YAML::Node l = io::require(entries[k], "left", ep);
        const YAML::Node r = io::require(entries[k], "right", ep);
        const std::size_t g = io::as_index(l, ep + ".left");
        const std::size_t h = io::as_index(r, ep + ".right");
        if (g >= model_.rank_z(di) || h >= model_.rank_z(dj)) throw ParseError(ep, io::line_of(entries[k]), "generator index out of range");
        table[g * model_.rank_z(dj) + h] = read_coords(io::require(entries[k], "value", ep), ep + ".value", model_.rank_z(di + dj));
      }
      model_.set_cupz(di, dj, std::move(table));
    }
  }

  void read_orientation() {
    const YAML::Node o = io::expect_map(io::require(root_, "orientation", ""), "orientation");
    const YAML::Node s = io::require(o, "integral_sign", "orientation");
    const long long sign = io::as_int(s, "orientation.integral_sign");
    if (sign < -1 || sign > 1) throw ParseError("orientation.integral_sign", io::line_of(s), "expected -1, 0 or 1");
    model_.set_orientation_sign(static_cast<int>(sign));
    model_.set_eval2(read_class(io::require(o, "mod2", "orientation"), "orientation.mod2", n_).v);
  }

  const YAML::Node& root_;
  int n_ = 0;
  std::vector<GradedPiece> graded_;
  std::map<std::string, std::pair<int, std::size_t>> where_;
  CohomologyModel model_;
};

}  // namespace

ManifoldModel parse_model(const std::string& text) {
  const YAML::Node root = io::load_document(text);
  try {
    return ModelReader(root).read();
  } catch (const ContractViolation& e) {
    throw ParseError("", 0, e.what());
  } catch (const YAML::Exception& e) {
    throw ParseError("", e.mark.line + 1, e.msg);
  }
}

}  // namespace contact9::model
