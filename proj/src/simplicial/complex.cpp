#include "contact9/simplicial/complex.hpp"

#include "../yaml_doc.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace contact9::simplicial {

namespace {

std::string render(const std::vector<VertexId>& ids) {
  std::string s = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
  return s + "]";
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::vector<VertexId> vertices,
                                     const std::vector<std::vector<VertexId>>& facets)
    : vertices_(std::move(vertices)) {
  std::unordered_map<VertexId, int> position;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!position.emplace(vertices_[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate vertex id " + std::to_string(vertices_[i]));
    }
  }
  std::set<Simplex> unique;
  for (const auto& f : facets) {
    if (f.empty()) throw std::invalid_argument("empty facet");
    Simplex s;
    s.reserve(f.size());
    for (VertexId v : f) {
      auto it = position.find(v);
      if (it == position.end()) throw std::invalid_argument("facet " + render(f) + " uses unknown vertex " + std::to_string(v));
      s.push_back(it->second);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw std::invalid_argument("facet " + render(f) + " repeats a vertex");
    }
    unique.insert(std::move(s));
  }

  int top = -1;
  for (const auto& s : unique) top = std::max(top, static_cast<int>(s.size()) - 1);
  std::vector<std::set<Simplex>> faces(static_cast<std::size_t>(top + 1));
  for (const auto& s : unique) {
    const std::size_t n = s.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) face.push_back(s[i]);
      }
      faces[face.size() - 1].insert(std::move(face));
    }
  }
  std::set<Simplex> proper_faces;
  for (const auto& s : unique) {
    const std::size_t n = s.size();
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) face.push_back(s[i]);
      }
      proper_faces.insert(std::move(face));
    }
  }
  for (const auto& s : unique) {
    if (proper_faces.count(s) != 0) {
      std::vector<VertexId> ids;
      for (int p : s) ids.push_back(vertices_[static_cast<std::size_t>(p)]);
      throw std::invalid_argument("facet " + render(ids) + " is contained in another facet");
    }
  }
  facets_.assign(unique.begin(), unique.end());
  faces_.reserve(faces.size());
  for (auto& f : faces) faces_.emplace_back(f.begin(), f.end());
}

SimplicialComplex SimplicialComplex::from_facets(const std::vector<std::vector<VertexId>>& facets) {
  VertexId top = -1;
  for (const auto& f : facets) {
    for (VertexId v : f) top = std::max(top, v);
  }
  std::vector<VertexId> vertices;
  for (VertexId v = 0; v <= top; ++v) vertices.push_back(v);
  return SimplicialComplex(std::move(vertices), facets);
}

const std::vector<Simplex>& SimplicialComplex::simplices(int degree) const {
  if (degree < 0 || degree > dimension()) {
    static const std::vector<Simplex> empty;
    return empty;
  }
  return faces_[static_cast<std::size_t>(degree)];
}

std::optional<std::size_t> SimplicialComplex::index_of(std::span<const int> face) const {
  if (face.empty() || face.size() > faces_.size()) return std::nullopt;
  const auto& list = faces_[face.size() - 1];
  auto it = std::lower_bound(list.begin(), list.end(), face, [](const Simplex& a, std::span<const int> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  if (it == list.end() || !std::equal(it->begin(), it->end(), face.begin(), face.end())) return std::nullopt;
  return static_cast<std::size_t>(it - list.begin());
}

std::vector<std::vector<VertexId>> SimplicialComplex::facet_ids() const {
  std::vector<std::vector<VertexId>> out;
  out.reserve(facets_.size());
  for (const auto& f : facets_) {
    std::vector<VertexId> ids;
    for (int p : f) ids.push_back(vertices_[static_cast<std::size_t>(p)]);
    out.push_back(std::move(ids));
  }
  return out;
}

SimplicialComplex SimplicialComplex::reordered(const std::vector<VertexId>& order) const {
  std::vector<VertexId> sorted_a = vertices_;
  std::vector<VertexId> sorted_b = order;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  if (sorted_a != sorted_b) throw std::invalid_argument("reordering is not a permutation of the vertices");
  return SimplicialComplex(order, facet_ids());
}

long long SimplicialComplex::euler_characteristic() const {
  long long chi = 0;
  for (int d = 0; d <= dimension(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(count(d));
  return chi;
}

bool SimplicialComplex::is_mod2_pseudomanifold() const {
  const int n = dimension();
  if (n < 1) return false;
  for (const auto& f : facets_) {
    if (static_cast<int>(f.size()) != n + 1) return false;
  }
  std::vector<int> incidence(count(n - 1), 0);
  Simplex face;
  for (const auto& f : facets_) {
    for (std::size_t drop = 0; drop < f.size(); ++drop) {
      face.clear();
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (i != drop) face.push_back(f[i]);
      }
      ++incidence[*index_of(face)];
    }
  }
  return std::all_of(incidence.begin(), incidence.end(), [](int c) { return c % 2 == 0; });
}

SimplicialComplex parse_complex(const std::string& text) {
  YAML::Node root = io::load_document(text);
  if (YAML::Node version = root["schema_version"]) {
    if (io::as_int(version, "schema_version") != 1) throw ParseError("schema_version", io::line_of(version), "unsupported schema version");
  }
  if (YAML::Node kind = root["kind"]) {
    if (io::as_string(kind, "kind") != "simplicial_complex") throw ParseError("kind", io::line_of(kind), "expected kind simplicial_complex");
  }
  const YAML::Node vnode = io::expect_sequence(io::require(root, "vertices", ""), "vertices");
  std::vector<VertexId> vertices;
  for (std::size_t i = 0; i < vnode.size(); ++i) vertices.push_back(io::as_int(vnode[i], io::index_path("vertices", i)));
  const YAML::Node fnode = io::expect_sequence(io::require(root, "facets", ""), "facets");
  std::vector<std::vector<VertexId>> facets;
  for (std::size_t i = 0; i < fnode.size(); ++i) {
    const std::string path = io::index_path("facets", i);
    io::expect_sequence(fnode[i], path);
    std::vector<VertexId> f;
    for (std::size_t j = 0; j < fnode[i].size(); ++j) f.push_back(io::as_int(fnode[i][j], io::index_path(path, j)));
    // rejected when the canonical sort exposes a repeat
    std::vector<VertexId> sorted = f;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError(path, io::line_of(fnode[i]), "facet repeats a vertex");
    }
    facets.push_back(std::move(f));
  }
  try {
    return SimplicialComplex(std::move(vertices), facets);
  } catch (const std::invalid_argument& e) {
    throw ParseError("facets", io::line_of(fnode), e.what());
  }
}

std::string emit_complex(const SimplicialComplex& complex) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "simplicial_complex";
  j["vertices"] = complex.vertices();
  j["facets"] = complex.facet_ids();
  return j.dump(1);
}

SimplicialComplex product(const SimplicialComplex& a, const SimplicialComplex& b) {
  const auto nb = static_cast<VertexId>(b.vertices().size());
  std::vector<VertexId> vertices;
  for (VertexId i = 0; i < static_cast<VertexId>(a.vertices().size()); ++i) {
    for (VertexId j = 0; j < nb; ++j) vertices.push_back(i * nb + j);
  }
  std::vector<std::vector<VertexId>> facets;
  for (const auto& s : a.facets()) {
    for (const auto& t : b.facets()) {
      const std::size_t p = s.size() - 1;
      const std::size_t q = t.size() - 1;
      // lattice paths: choose which of the p+q steps advance the first factor
      std::vector<bool> steps(p + q, false);
      std::fill(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(p), true);
      std::sort(steps.begin(), steps.end());
      do {
        std::size_t i = 0, j = 0;
        std::vector<VertexId> simplex{s[0] * nb + t[0]};
        for (bool first : steps) {
          first ? ++i : ++j;
          simplex.push_back(s[i] * nb + t[j]);
        }
        facets.push_back(std::move(simplex));
      } while (std::next_permutation(steps.begin(), steps.end()));
    }
  }
  return SimplicialComplex(std::move(vertices), facets);
}

}  // namespace contact9::simplicial
