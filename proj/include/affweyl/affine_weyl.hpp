#pragma once

#include <cassert>
#include <optional>
#include <unordered_map>

#include "affweyl/root_datum.hpp"

namespace affweyl {

// Finite Weyl group element: exact action matrix on coweight fw coordinates,
// with the inverse kept alongside so products never require elimination.
struct WElem {
  IMat m, minv;

  bool is_identity() const {
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j)
        if (m.at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  bool operator==(const WElem& o) const { return m == o.m; }
};

// Element t^lambda u of the extended affine Weyl group, lambda in the adjoint
// cocharacter lattice (integer fw coordinates).
struct AffineElement {
  IVec lambda;
  WElem u;

  bool operator==(const AffineElement& o) const { return lambda == o.lambda && u == o.u; }
};

inline IVec aff_key(const AffineElement& a) {
  IVec k = a.lambda;
  k.insert(k.end(), a.u.m.a.begin(), a.u.m.a.end());
  return k;
}

struct IVecHash {
  size_t operator()(const IVec& v) const {
    size_t h = 1469598103934665603ull;
    for (Int x : v) {
      h ^= size_t(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// The group W~ = P^vee x| W for one root datum, together with the Frobenius
// action induced by a diagram automorphism.  All operations are pure; the
// bound datum must outlive the group object.
class AffineGroup {
 public:
  const RootDatum& rd;
  Twist tw;

  AffineGroup(const RootDatum& datum, Twist twist) : rd(datum), tw(std::move(twist)) {
    tw.validate(rd);
    simples_.reserve(rd.n);
    for (int i = 0; i < rd.n; ++i) simples_.push_back(make_simple(i));
    s_theta_ = make_theta_reflection();
    build_kottwitz_form();
  }

  int rank() const { return rd.n; }
  int tilde_size() const { return rd.n + 1; }  // one affine node (irreducible datum)

  // sigma on tilde-S: node 0 is the affine node and is fixed
  int sigma_node(int k) const { return k == 0 ? 0 : tw(k - 1) + 1; }

  // ----- finite Weyl group -----

  WElem w_identity() const { return WElem{IMat::identity(rd.n), IMat::identity(rd.n)}; }

  const WElem& w_simple(int i) const { return simples_[i]; }

  WElem w_mul(const WElem& a, const WElem& b) const { return WElem{a.m * b.m, b.minv * a.minv}; }

  WElem w_inv(const WElem& a) const { return WElem{a.minv, a.m}; }

  // root-side image of the positive root #k under u is  minv^T * root;
  // roots keep a uniform coordinate sign, so the height decides negativity.
  bool sends_root_negative(const WElem& u, const IVec& root) const {
    Int h = 0;
    for (int j = 0; j < rd.n; ++j) {
      Int s = 0;
      for (int k = 0; k < rd.n; ++k) s += u.minv.at(k, j) * root[k];
      h += s;
    }
    return h < 0;
  }

  int w_length(const WElem& u) const {
    int len = 0;
    for (auto& r : rd.pos_roots)
      if (sends_root_negative(u, r)) ++len;
    return len;
  }

  // i is a right descent iff u(alpha_i) < 0 iff row i of minv has negative height
  bool right_descent(const WElem& u, int i) const {
    Int h = 0;
    for (int j = 0; j < rd.n; ++j) h += u.minv.at(i, j);
    return h < 0;
  }

  IVec w_word(const WElem& u) const {
    WElem cur = u;
    IVec rev;
    while (!cur.is_identity()) {
      int i = -1;
      for (int k = 0; k < rd.n; ++k)
        if (right_descent(cur, k)) { i = k; break; }
      if (i < 0) throw std::logic_error("w_word: no descent on a non-identity element");
      rev.push_back(i);
      cur = w_mul(cur, simples_[i]);
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
  }

  Mask w_supp(const WElem& u) const {
    Mask s = 0;
    for (Int i : w_word(u)) s |= (1u << i);
    return s;
  }

  Mask w_supp_sigma(const WElem& u) const { return tw.closure(w_supp(u)); }

  bool is_partial_coxeter(const WElem& u) const {
    int len = w_length(u);
    Mask supp = w_supp(u);
    if (mask_count(supp) != len) return false;
    for (auto& orb : tw.orbits()) {
      int hits = 0;
      for (Int i : orb)
        if (mask_has(supp, int(i))) ++hits;
      if (hits > 1) return false;
    }
    return true;
  }

  WElem w_sigma(const WElem& a) const {
    return WElem{sigma_mat_ * a.m * sigma_mat_inv_, sigma_mat_ * a.minv * sigma_mat_inv_};
  }

  WElem w_sigma_inverse(const WElem& a) const {
    return WElem{sigma_mat_inv_ * a.m * sigma_mat_, sigma_mat_inv_ * a.minv * sigma_mat_};
  }

  // ----- extended affine Weyl group -----

  AffineElement one() const { return AffineElement{IVec(rd.n, 0), w_identity()}; }

  AffineElement translation(IVec fw) const {
    if (int(fw.size()) != rd.n) throw std::invalid_argument("translation: dimension mismatch");
    return AffineElement{std::move(fw), w_identity()};
  }

  AffineElement from_w(WElem u) const { return AffineElement{IVec(rd.n, 0), std::move(u)}; }

  AffineElement mul(const AffineElement& a, const AffineElement& b) const {
    IVec lam = a.u.m.apply(b.lambda);
    for (int i = 0; i < rd.n; ++i) lam[i] += a.lambda[i];
    return AffineElement{std::move(lam), w_mul(a.u, b.u)};
  }

  AffineElement inv(const AffineElement& a) const {
    IVec lam = a.u.minv.apply(a.lambda);
    for (auto& x : lam) x = -x;
    return AffineElement{std::move(lam), w_inv(a.u)};
  }

  // simple reflections of the affine Coxeter system; k = 0 is t^{theta^vee} s_theta
  AffineElement affine_simple(int k) const {
    if (k == 0) return AffineElement{rd.theta_vee_fw, s_theta_};
    return from_w(simples_[k - 1]);
  }

  AffineElement sigma_elt(const AffineElement& a) const {
    return AffineElement{tw.apply_fw(a.lambda), w_sigma(a.u)};
  }

  Int length(const AffineElement& a) const {
    Int len = 0;
    for (size_t k = 0; k < rd.pos_roots.size(); ++k) {
      Int pairing = 0;
      for (int j = 0; j < rd.n; ++j) pairing += a.lambda[j] * rd.pos_roots[k][j];
      // u^{-1}(alpha) is negative iff row-sums of m against the root are
      bool neg = false;
      {
        Int h = 0;
        for (int j = 0; j < rd.n; ++j) {
          Int s = 0;
          for (int t = 0; t < rd.n; ++t) s += a.u.m.at(t, j) * rd.pos_roots[k][t];
          h += s;
        }
        neg = h < 0;
      }
      len += neg ? std::abs(pairing - 1) : std::abs(pairing);
    }
    return len;
  }

  AffineElement simple_mult(int k, const AffineElement& a, bool on_left) const {
    AffineElement s = affine_simple(k);
    return on_left ? mul(s, a) : mul(a, s);
  }

  // s_k * a * sigma(s_k)
  AffineElement sigma_conjugate(int k, const AffineElement& a) const {
    return mul(mul(affine_simple(k), a), affine_simple(sigma_node(k)));
  }

  // w = x t^mu y with mu dominant and t^mu y the minimal-length element of W w
  struct Coset {
    WElem x;
    IVec mu;
    WElem y;
  };

  Coset coset_decompose(const AffineElement& w) const {
    AffineElement z = w;
    WElem x = w_identity();
    Int len = length(z);
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < rd.n; ++i) {
        AffineElement cand = mul(from_w(simples_[i]), z);
        Int cl = length(cand);
        if (cl < len) {
          z = std::move(cand);
          len = cl;
          x = w_mul(x, simples_[i]);
          moved = true;
          break;
        }
      }
    }
    if (!rd.is_dominant_fw(z.lambda))
      throw std::logic_error("coset_decompose: minimal coset representative has non-dominant translation");
    Coset c{std::move(x), z.lambda, z.u};
    assert(length(w) == Int(w_length(c.x)) + rd.pair_two_rho(c.mu) - Int(w_length(c.y)));
    return c;
  }

  WElem eta(const AffineElement& w) const {
    Coset c = coset_decompose(w);
    return w_mul(w_sigma_inverse(c.y), c.x);
  }

  // Newton point: iterate the affine action of w sigma until the linear part
  // is the identity, then average the accumulated translation.
  RVec newton_fw(const AffineElement& w) const {
    IMat lin = w.u.m * sigma_mat_;
    IMat pw = lin;
    IVec acc = w.lambda;
    int k = 1;
    IMat id = IMat::identity(rd.n);
    while (!(pw == id)) {
      // t_{k+1} = lin * t_k + lambda
      acc = lin.apply(acc);
      for (int i = 0; i < rd.n; ++i) acc[i] += w.lambda[i];
      pw = pw * lin;
      ++k;
      if (k > 4096) throw std::logic_error("newton: linear part order overflow");
    }
    RVec nu(rd.n);
    for (int i = 0; i < rd.n; ++i) nu[i] = Rat(acc[i], k);
    return rd.dominant_rep_fw(std::move(nu)).first;
  }

  IVec kottwitz(const AffineElement& w) const { return kott_.label(w.lambda); }

  IVec kottwitz_of_coweight(const IVec& mu_fw) const { return kottwitz(AffineElement{mu_fw, w_identity()}); }

  int fixed_dim(const AffineElement& w) const {
    IMat lin = w.u.m * sigma_mat_;
    for (int i = 0; i < rd.n; ++i) lin.at(i, i) -= 1;
    return rd.n - imat_rank(lin);
  }

  int fixed_dim_w(const WElem& u) const { return fixed_dim(from_w(u)); }

  // all full sigma-Coxeter elements (one simple reflection per sigma-orbit,
  // every ordering, deduplicated)
  std::vector<WElem> sigma_coxeter_elements() const {
    auto orbs = tw.orbits();
    std::vector<WElem> out;
    std::vector<IVec> reps;  // choice of one node per orbit
    IVec cur;
    build_reps(orbs, 0, cur, reps);
    for (auto& rep : reps) {
      IVec perm = rep;
      std::sort(perm.begin(), perm.end());
      do {
        WElem c = w_identity();
        for (Int i : perm) c = w_mul(c, simples_[i]);
        bool dup = false;
        for (auto& e : out)
          if (e == c) dup = true;
        if (!dup) out.push_back(c);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
  }

  const IMat& sigma_matrix() const { return sigma_mat_; }

 private:
  std::vector<WElem> simples_;
  WElem s_theta_;
  IMat sigma_mat_, sigma_mat_inv_;
  KottwitzForm kott_;

  void build_reps(const std::vector<IVec>& orbs, size_t k, IVec& cur, std::vector<IVec>& out) const {
    if (k == orbs.size()) {
      out.push_back(cur);
      return;
    }
    for (Int i : orbs[k]) {
      cur.push_back(i);
      build_reps(orbs, k + 1, cur, out);
      cur.pop_back();
    }
  }

  WElem make_simple(int i) const {
    // s_i on fw coords: (s_i m)_j = m_j - m_i cartan(i,j)
    IMat s = IMat::identity(rd.n);
    for (int j = 0; j < rd.n; ++j) s.at(j, i) -= rd.cartan.at(i, j);
    return WElem{s, s};
  }

  WElem make_theta_reflection() const {
    const IVec& theta_root = rd.pos_roots[rd.theta_index];
    IMat s = IMat::identity(rd.n);
    // s_theta(m) = m - (m . theta_root) theta_vee_fw
    for (int j = 0; j < rd.n; ++j)
      for (int i = 0; i < rd.n; ++i) s.at(j, i) -= rd.theta_vee_fw[j] * theta_root[i];
    return WElem{s, s};
  }

  void build_kottwitz_form() {
    sigma_mat_ = IMat(rd.n, rd.n);
    sigma_mat_inv_ = IMat(rd.n, rd.n);
    for (int i = 0; i < rd.n; ++i) {
      sigma_mat_.at(tw(i), i) = 1;
      sigma_mat_inv_.at(i, tw(i)) = 1;
    }
    kott_ = make_kottwitz_form(rd, tw);
  }
};

}  // namespace affweyl
