#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "toricdvr/polyhedral.hpp"

namespace toricdvr {

namespace {

// Calls fn on every k-subset of {0..n-1}, in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

RatMatrix rows_matrix(const std::vector<IntVec>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

RatMatrix rows_matrix(const std::vector<RatVec>& rows, std::size_t cols) {
  return RatMatrix::from_rows(rows, cols);
}

// Indices of a maximal linearly independent subset, greedily from the front.
std::vector<std::size_t> independent_subset(const std::vector<IntVec>& vecs, std::size_t cols) {
  std::vector<std::size_t> chosen;
  std::vector<IntVec> acc;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    acc.push_back(vecs[i]);
    if (rank(rows_matrix(acc, cols)) == acc.size()) {
      chosen.push_back(i);
    } else {
      acc.pop_back();
    }
  }
  return chosen;
}

int sign_of_dot(const IntVec& h, const IntVec& g) {
  long long s = dot(h, g);
  return (s > 0) - (s < 0);
}

}  // namespace

Cone Cone::from_generators(std::size_t ambient_dim, const std::vector<IntVec>& generators) {
  Cone c;
  c.ambient_dim_ = ambient_dim;

  std::set<IntVec> uniq;
  for (const auto& g : generators) {
    if (g.size() != ambient_dim)
      throw Error(ErrorCode::ShapeMismatch, "generator " + toricdvr::to_string(g) + " has wrong length");
    if (is_zero(g)) continue;
    uniq.insert(primitive(g));
  }
  std::vector<IntVec> gens(uniq.begin(), uniq.end());

  if (gens.empty()) {
    for (std::size_t i = 0; i < ambient_dim; ++i) {
      IntVec e(ambient_dim, 0);
      e[i] = 1;
      c.equations_.push_back(std::move(e));
    }
    return c;
  }

  const RatMatrix g_mat = rows_matrix(gens, ambient_dim);
  for (const auto& v : nullspace(g_mat)) c.equations_.push_back(primitive(v));
  const auto basis_idx = independent_subset(gens, ambient_dim);
  const std::size_t d = basis_idx.size();
  c.dim_ = d;

  // Candidate facet normals: h in span(gens) orthogonal to d-1 independent gens.
  std::vector<IntVec> normals;
  std::vector<std::vector<std::size_t>> tight_sets;
  auto try_normal = [&](const IntVec& h_in) {
    IntVec h = h_in;
    int pos = 0, neg = 0;
    for (const auto& g : gens) {
      int s = sign_of_dot(h, g);
      pos += s > 0;
      neg += s < 0;
    }
    if (pos > 0 && neg > 0) return;
    if (pos == 0 && neg == 0) return;
    if (neg > 0)
      for (auto& x : h) x = -x;
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (dot(h, gens[i]) == 0) tight.push_back(i);
    if (std::find(tight_sets.begin(), tight_sets.end(), tight) != tight_sets.end()) return;
    tight_sets.push_back(std::move(tight));
    normals.push_back(std::move(h));
  };

  if (d == 1) {
    try_normal(gens[basis_idx[0]]);
  } else {
    for_each_subset(gens.size(), d - 1, [&](const std::vector<std::size_t>& sub) {
      // h = sum_k c_k l_k with h . s = 0 for s in sub.
      RatMatrix m(d - 1, d);
      for (std::size_t r = 0; r < d - 1; ++r)
        for (std::size_t k = 0; k < d; ++k) m(r, k) = dot(gens[basis_idx[k]], gens[sub[r]]);
      auto ns = nullspace(m);
      if (ns.size() != 1) return;
      RatVec h(ambient_dim);
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t j = 0; j < ambient_dim; ++j) h[j] += ns[0][k] * Rational(gens[basis_idx[k]][j]);
      try_normal(primitive(h));
    });
  }

  if (normals.empty() || rank(rows_matrix(normals, ambient_dim)) != d)
    throw Error(ErrorCode::NotStronglyConvex, "cone over " + std::to_string(gens.size()) +
                                                  " generators contains a line");

  // Extremal rays: generators cut out (within the span) by the facets through them.
  std::vector<std::size_t> ray_idx;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (d == 1) {
      ray_idx.push_back(i);
      break;
    }
    std::vector<IntVec> through;
    for (std::size_t f = 0; f < normals.size(); ++f)
      if (std::find(tight_sets[f].begin(), tight_sets[f].end(), i) != tight_sets[f].end())
        through.push_back(normals[f]);
    if (!through.empty() && rank(rows_matrix(through, ambient_dim)) == d - 1) ray_idx.push_back(i);
  }
  for (auto i : ray_idx) c.rays_.push_back(gens[i]);  // gens sorted, so rays sorted

  c.facet_normals_ = normals;
  for (const auto& h : normals) {
    std::vector<std::size_t> on;
    for (std::size_t r = 0; r < c.rays_.size(); ++r)
      if (dot(h, c.rays_[r]) == 0) on.push_back(r);
    c.facet_rays_.push_back(std::move(on));
  }
  return c;
}

bool Cone::contains(const RatVec& x) const {
  if (x.size() != ambient_dim_) throw Error(ErrorCode::ShapeMismatch, "point has wrong dimension");
  for (const auto& e : equations_)
    if (!dot(e, x).is_zero()) return false;
  for (const auto& h : facet_normals_)
    if (dot(h, x).sign() < 0) return false;
  return true;
}

bool Cone::in_relative_interior(const RatVec& x) const {
  if (!contains(x)) return false;
  for (const auto& h : facet_normals_)
    if (dot(h, x).is_zero()) return false;
  return true;
}

bool Cone::contains_cone(const Cone& other) const {
  for (const auto& r : other.rays_)
    if (!contains(r)) return false;
  return true;
}

std::vector<Cone> Cone::faces() const {
  std::set<std::vector<std::size_t>> sets;
  std::vector<std::size_t> all(rays_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  sets.insert(all);
  for (const auto& f : facet_rays_) sets.insert(f);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<std::size_t>> cur(sets.begin(), sets.end());
    for (std::size_t a = 0; a < cur.size(); ++a)
      for (std::size_t b = a + 1; b < cur.size(); ++b) {
        std::vector<std::size_t> meet;
        std::set_intersection(cur[a].begin(), cur[a].end(), cur[b].begin(), cur[b].end(),
                              std::back_inserter(meet));
        if (sets.insert(meet).second) grew = true;
      }
  }
  sets.insert({});
  std::vector<Cone> out;
  for (const auto& s : sets) {
    std::vector<IntVec> g;
    for (auto i : s) g.push_back(rays_[i]);
    out.push_back(from_generators(ambient_dim_, g));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Cone> Cone::facets() const {
  std::vector<Cone> out;
  for (const auto& f : facet_rays_) {
    std::vector<IntVec> g;
    for (auto i : f) g.push_back(rays_[i]);
    out.push_back(from_generators(ambient_dim_, g));
  }
  return out;
}

bool Cone::has_face(const Cone& f) const {
  if (f.ambient_dim_ != ambient_dim_) return false;
  for (const auto& r : f.rays_)
    if (!std::binary_search(rays_.begin(), rays_.end(), r)) return false;
  // smallest face containing f's rays: intersect every facet through all of them
  std::vector<bool> keep(rays_.size(), true);
  for (std::size_t k = 0; k < facet_normals_.size(); ++k) {
    bool through_all = true;
    for (const auto& r : f.rays_)
      if (dot(facet_normals_[k], r) != 0) {
        through_all = false;
        break;
      }
    if (!through_all) continue;
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (dot(facet_normals_[k], rays_[i]) != 0) keep[i] = false;
  }
  std::size_t count = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), true));
  return count == f.rays_.size();
}

Cone Cone::intersect(const Cone& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw Error(ErrorCode::ShapeMismatch, "cone dimensions differ");
  const std::size_t dim = ambient_dim_;
  std::vector<IntVec> eqs = equations_;
  eqs.insert(eqs.end(), other.equations_.begin(), other.equations_.end());
  std::vector<IntVec> ineqs = facet_normals_;
  ineqs.insert(ineqs.end(), other.facet_normals_.begin(), other.facet_normals_.end());

  std::vector<RatVec> w_basis = eqs.empty() ? std::vector<RatVec>{} : nullspace(rows_matrix(eqs, dim));
  if (eqs.empty())
    for (std::size_t i = 0; i < dim; ++i) {
      RatVec e(dim);
      e[i] = 1;
      w_basis.push_back(std::move(e));
    }
  const std::size_t w = w_basis.size();
  if (w == 0) return zero(dim);

  // inequalities restricted to the common span coordinates
  std::vector<RatVec> a(ineqs.size(), RatVec(w));
  for (std::size_t i = 0; i < ineqs.size(); ++i)
    for (std::size_t k = 0; k < w; ++k) a[i][k] = dot(ineqs[i], w_basis[k]);

  std::vector<IntVec> rays;
  auto consider = [&](const RatVec& y_in) {
    RatVec y = y_in;
    int pos = 0, neg = 0;
    for (const auto& row : a) {
      int s = dot(row, y).sign();
      pos += s > 0;
      neg += s < 0;
    }
    if (pos > 0 && neg > 0) return;
    if (pos == 0 && neg == 0) return;  // lineality direction; absent for pointed cones
    if (neg > 0)
      for (auto& v : y) v = -v;
    RatVec x(dim);
    for (std::size_t k = 0; k < w; ++k)
      for (std::size_t j = 0; j < dim; ++j) x[j] += y[k] * w_basis[k][j];
    rays.push_back(primitive(x));
  };

  if (w == 1) {
    consider(RatVec{Rational(1)});
  } else {
    for_each_subset(a.size(), w - 1, [&](const std::vector<std::size_t>& sub) {
      std::vector<RatVec> rows;
      for (auto i : sub) rows.push_back(a[i]);
      auto ns = nullspace(rows_matrix(rows, w));
      if (ns.size() == 1) consider(ns[0]);
    });
  }
  return from_generators(dim, rays);
}

std::strong_ordering operator<=>(const Cone& a, const Cone& b) {
  if (auto c = a.ambient_dim_ <=> b.ambient_dim_; c != 0) return c;
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  return a.rays_ <=> b.rays_;
}

std::string Cone::to_string() const {
  std::ostringstream os;
  os << "cone(";
  for (std::size_t i = 0; i < rays_.size(); ++i) os << (i ? "," : "") << toricdvr::to_string(rays_[i]);
  os << ")";
  return os.str();
}

std::string to_string(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string to_string(const RatVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    os << (i ? "," : "");
    if (v[i].is_integer())
      os << v[i].num();
    else
      os << v[i];
  }
  os << ")";
  return os.str();
}

}  // namespace toricdvr
