#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>

#include "affweyl/linalg.hpp"

namespace affweyl {

// Node subsets of a (rank <= 8) diagram as bitmasks.
using Mask = unsigned;

inline int mask_count(Mask m) { return __builtin_popcount(m); }
inline bool mask_has(Mask m, int i) { return (m >> i) & 1u; }

// A reduced based root system, stored through its Cartan pairings.
//
// Conventions, used across the whole library:
//   * cartan(i,j) = <alpha_i^vee, alpha_j>  (simple root j evaluated on simple coroot i);
//   * coweights are handled in "fw coordinates" m with m_j = <v, alpha_j>, so the
//     fundamental coweight omega_i^vee is the standard basis vector e_i and elements
//     of the adjoint cocharacter lattice have integer coordinates;
//   * weight-side vectors are handled in simple-root coordinates x; the pairing of a
//     coweight (fw coords) with a weight (root coords) is then the plain dot product;
//   * coroot coordinates c (coefficients on alpha_i^vee) satisfy m = cartan^T c.
//
// Nodes are 0-based internally; Bourbaki numbering (1-based) is used in all I/O.
struct RootDatum {
  std::string label;
  int n = 0;
  IMat cartan;

  std::vector<IVec> pos_roots;    // simple-root coordinates
  std::vector<IVec> pos_coroots;  // simple-coroot coordinates, aligned with pos_roots
  IVec two_rho;                   // root coordinates of the sum of positive roots
  RMat cartan_inv;                // row i = omega_i^vee in coroot coords; col i = omega_i in root coords
  int theta_index = -1;           // highest root position in pos_roots
  IVec theta_vee_fw;              // highest coroot theta^vee in fw coordinates

  static RootDatum from_cartan(IMat a, std::string label_) {
    RootDatum rd;
    rd.label = std::move(label_);
    rd.n = a.rows;
    if (a.rows != a.cols || a.rows < 1 || a.rows > 8)
      throw std::invalid_argument("root datum: rank must be between 1 and 8");
    for (int i = 0; i < rd.n; ++i) {
      if (a.at(i, i) != 2) throw std::invalid_argument("root datum: diagonal entries must be 2");
      for (int j = 0; j < rd.n; ++j) {
        if (i == j) continue;
        if (a.at(i, j) > 0) throw std::invalid_argument("root datum: off-diagonal entries must be <= 0");
        if ((a.at(i, j) == 0) != (a.at(j, i) == 0))
          throw std::invalid_argument("root datum: zero pattern must be symmetric");
      }
    }
    rd.cartan = std::move(a);
    rd.generate_roots();
    rd.cartan_inv = rmat_inverse(RMat::from(rd.cartan));
    rd.locate_theta();
    return rd;
  }

  static RootDatum simple(char series, int rank) {
    IMat a(rank, rank);
    for (int i = 0; i < rank; ++i) a.at(i, i) = 2;
    auto edge = [&](int i, int j) { a.at(i, j) = -1; a.at(j, i) = -1; };
    switch (series) {
      case 'A':
        if (rank < 1) throw std::invalid_argument("A_n needs n >= 1");
        for (int i = 0; i + 1 < rank; ++i) edge(i, i + 1);
        break;
      case 'B':
        if (rank < 2) throw std::invalid_argument("B_n needs n >= 2");
        for (int i = 0; i + 1 < rank; ++i) edge(i, i + 1);
        a.at(rank - 2, rank - 1) = -1;
        a.at(rank - 1, rank - 2) = -2;
        break;
      case 'C':
        if (rank < 2) throw std::invalid_argument("C_n needs n >= 2");
        for (int i = 0; i + 1 < rank; ++i) edge(i, i + 1);
        a.at(rank - 2, rank - 1) = -2;
        a.at(rank - 1, rank - 2) = -1;
        break;
      case 'D':
        if (rank < 3) throw std::invalid_argument("D_n needs n >= 3");
        for (int i = 0; i + 1 < rank - 1; ++i) edge(i, i + 1);
        a.at(rank - 2, rank - 1) = 0;
        a.at(rank - 1, rank - 2) = 0;
        edge(rank - 3, rank - 1);
        break;
      case 'E': {
        if (rank < 6 || rank > 8) throw std::invalid_argument("E_n needs n in {6,7,8}");
        edge(0, 2);
        edge(2, 3);
        edge(1, 3);
        for (int i = 3; i + 1 < rank; ++i) edge(i, i + 1);
        break;
      }
      case 'F':
        if (rank != 4) throw std::invalid_argument("F4 has rank 4");
        edge(0, 1);
        edge(2, 3);
        a.at(1, 2) = -1;
        a.at(2, 1) = -2;
        break;
      case 'G':
        if (rank != 2) throw std::invalid_argument("G2 has rank 2");
        a.at(0, 1) = -3;
        a.at(1, 0) = -1;
        break;
      default:
        throw std::invalid_argument(std::string("unknown series '") + series + "'");
    }
    return from_cartan(std::move(a), std::string(1, series) + std::to_string(rank));
  }

  // pairing <v, w>, v in coroot coordinates, w in root coordinates
  Rat pair(const RVec& v_coroot, const RVec& w_root) const {
    if (int(v_coroot.size()) != n || int(w_root.size()) != n)
      throw std::invalid_argument("pair: dimension mismatch");
    Rat s = 0;
    for (int i = 0; i < n; ++i) {
      if (v_coroot[i] == 0) continue;
      for (int j = 0; j < n; ++j) s += v_coroot[i] * w_root[j] * cartan.at(i, j);
    }
    return s;
  }

  // fw coordinates from coroot coordinates: m = cartan^T c
  RVec fw_from_coroot(const RVec& c) const {
    RVec m(n, Rat(0));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) m[j] += c[i] * cartan.at(i, j);
    return m;
  }

  // coroot coordinates from fw coordinates: c = (cartan^T)^{-1} m
  RVec coroot_from_fw(const RVec& m) const {
    RVec c(n, Rat(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c[i] += cartan_inv.at(j, i) * m[j];
    return c;
  }

  // <v, alpha_j> for a coweight in fw coordinates is just m_j; reflections act by
  //   s_i(m) = m - m_i * (row i of cartan).
  template <typename Num>
  void reflect_fw(int i, std::vector<Num>& m) const {
    Num mi = m[i];
    if (mi == 0) return;
    for (int j = 0; j < n; ++j) m[j] -= mi * cartan.at(i, j);
  }

  template <typename Num>
  bool is_dominant_fw(const std::vector<Num>& m) const {
    for (int j = 0; j < n; ++j)
      if (m[j] < 0) return false;
    return true;
  }

  // Dominant representative of the W-orbit, with a word of simple reflections
  // carrying the input to it (applied left to right).
  template <typename Num>
  std::pair<std::vector<Num>, IVec> dominant_rep_fw(std::vector<Num> m) const {
    IVec word;
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < n; ++i)
        if (m[i] < 0) {
          reflect_fw(i, m);
          word.push_back(i);
          moved = true;
          break;
        }
    }
    return {std::move(m), std::move(word)};
  }

  // I(v) = { i : <v, alpha_i> = 0 } for dominant v (fw coordinates).
  Mask newton_level_set(const RVec& m) const {
    if (!is_dominant_fw(m)) throw std::invalid_argument("newton_level_set: input must be dominant");
    Mask s = 0;
    for (int i = 0; i < n; ++i)
      if (m[i] == 0) s |= (1u << i);
    return s;
  }

  // <mu, omega_i> for mu in fw coordinates (rational in general).
  Rat pair_fw_weight(const RVec& mu_fw, int i) const {
    Rat s = 0;
    for (int j = 0; j < n; ++j) s += mu_fw[j] * cartan_inv.at(j, i);
    return s;
  }

  Rat pair_fw_weight_int(const IVec& mu_fw, int i) const {
    Rat s = 0;
    for (int j = 0; j < n; ++j) s += Rat(mu_fw[j]) * cartan_inv.at(j, i);
    return s;
  }

  // <v, 2 rho> for a coweight in fw coordinates.
  template <typename Num>
  Num pair_two_rho(const std::vector<Num>& m) const {
    Num s = 0;
    for (int j = 0; j < n; ++j) s += m[j] * Num(two_rho[j]);
    return s;
  }

  bool adjacent(int i, int j) const { return i != j && cartan.at(i, j) != 0; }

  // connected components of a node subset
  std::vector<Mask> components(Mask s) const {
    std::vector<Mask> out;
    Mask seen = 0;
    for (int i = 0; i < n; ++i) {
      if (!mask_has(s, i) || mask_has(seen, i)) continue;
      Mask comp = 0;
      IVec stack{i};
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (mask_has(comp, v)) continue;
        comp |= (1u << v);
        for (int j = 0; j < n; ++j)
          if (mask_has(s, j) && !mask_has(comp, j) && adjacent(v, j)) stack.push_back(j);
      }
      out.push_back(comp);
      seen |= comp;
    }
    return out;
  }

 private:
  void generate_roots() {
    // closure of the simple (root, coroot) pairs under simple reflections
    std::set<IVec> seen;
    std::vector<std::pair<IVec, IVec>> all;
    for (int i = 0; i < n; ++i) {
      IVec r(n, 0), c(n, 0);
      r[i] = 1;
      c[i] = 1;
      all.emplace_back(r, c);
      seen.insert(r);
    }
    for (size_t k = 0; k < all.size(); ++k) {
      for (int i = 0; i < n; ++i) {
        IVec r = all[k].first, c = all[k].second;
        // s_i on root coords: r -= (sum_j cartan(i,j) r_j) e_i
        Int rv = 0, cv = 0;
        for (int j = 0; j < n; ++j) rv += cartan.at(i, j) * r[j];
        for (int j = 0; j < n; ++j) cv += c[j] * cartan.at(j, i);
        r[i] -= rv;
        c[i] -= cv;
        if (seen.insert(r).second) all.emplace_back(r, c);
        if (all.size() > 500) throw std::invalid_argument("root datum: root system is not finite");
      }
    }
    two_rho.assign(n, 0);
    for (auto& [r, c] : all) {
      bool pos = true, neg = true;
      for (Int x : r) {
        if (x > 0) neg = false;
        if (x < 0) pos = false;
      }
      if (!pos && !neg) throw std::logic_error("root datum: mixed-sign root");
      if (pos) {
        pos_roots.push_back(r);
        pos_coroots.push_back(c);
        for (int j = 0; j < n; ++j) two_rho[j] += r[j];
      }
    }
  }

  void locate_theta() {
    Int best = -1;
    for (size_t k = 0; k < pos_roots.size(); ++k) {
      Int h = std::accumulate(pos_roots[k].begin(), pos_roots[k].end(), Int(0));
      if (h > best) {
        best = h;
        theta_index = int(k);
      }
    }
    // theta^vee in fw coordinates: <theta^vee, alpha_j> = sum_i c_i cartan(i,j)
    const IVec& c = pos_coroots[theta_index];
    theta_vee_fw.assign(n, 0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) theta_vee_fw[j] += c[i] * cartan.at(i, j);
    // the highest root is dominant
    for (int i = 0; i < n; ++i) {
      Int v = 0;
      for (int j = 0; j < n; ++j) v += cartan.at(i, j) * pos_roots[theta_index][j];
      if (v < 0) throw std::logic_error("root datum: highest root is not dominant");
    }
  }
};

// Diagram automorphism sigma, as a permutation of the nodes.
struct Twist {
  IVec perm;  // perm[i] = sigma(i)

  static Twist identity(int n) {
    Twist t;
    t.perm.resize(n);
    std::iota(t.perm.begin(), t.perm.end(), 0);
    return t;
  }

  bool is_identity() const {
    for (size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != Int(i)) return false;
    return true;
  }

  int operator()(int i) const { return int(perm[i]); }

  int inverse(int i) const {
    for (size_t j = 0; j < perm.size(); ++j)
      if (perm[j] == i) return int(j);
    throw std::logic_error("twist: not a permutation");
  }

  void validate(const RootDatum& rd) const {
    if (int(perm.size()) != rd.n) throw std::invalid_argument("twist: size does not match rank");
    std::vector<bool> hit(rd.n, false);
    for (Int p : perm) {
      if (p < 0 || p >= rd.n || hit[p]) throw std::invalid_argument("twist: not a permutation");
      hit[p] = true;
    }
    for (int i = 0; i < rd.n; ++i)
      for (int j = 0; j < rd.n; ++j)
        if (rd.cartan.at((*this)(i), (*this)(j)) != rd.cartan.at(i, j))
          throw std::invalid_argument("twist: not a Cartan automorphism");
  }

  int order() const {
    int n = int(perm.size());
    int ord = 1;
    IVec p(perm);
    IVec id(n);
    std::iota(id.begin(), id.end(), 0);
    while (p != id) {
      IVec q(n);
      for (int i = 0; i < n; ++i) q[i] = perm[p[i]];
      p = q;
      ++ord;
      if (ord > 64) throw std::logic_error("twist: order overflow");
    }
    return ord;
  }

  // orbits as sorted node lists, ordered by minimal element
  std::vector<IVec> orbits() const {
    int n = int(perm.size());
    std::vector<bool> seen(n, false);
    std::vector<IVec> out;
    for (int i = 0; i < n; ++i) {
      if (seen[i]) continue;
      IVec orb;
      int j = i;
      while (!seen[j]) {
        seen[j] = true;
        orb.push_back(j);
        j = (*this)(j);
      }
      std::sort(orb.begin(), orb.end());
      out.push_back(orb);
    }
    return out;
  }

  Mask image(Mask s) const {
    Mask r = 0;
    for (size_t i = 0; i < perm.size(); ++i)
      if (mask_has(s, int(i))) r |= (1u << perm[i]);
    return r;
  }

  bool stable(Mask s) const { return image(s) == s; }

  Mask closure(Mask s) const {
    Mask r = s;
    while (true) {
      Mask next = r | image(r);
      if (next == r) return r;
      r = next;
    }
  }

  // number of orbits meeting the (sigma-stable) subset
  int orbit_count(Mask s) const {
    int cnt = 0;
    for (auto& orb : orbits())
      if (mask_has(s, int(orb[0]))) ++cnt;
    return cnt;
  }

  // sigma on fw coordinates: (sigma m)_{sigma(i)} = m_i
  template <typename Num>
  std::vector<Num> apply_fw(const std::vector<Num>& m) const {
    std::vector<Num> r(m.size());
    for (size_t i = 0; i < m.size(); ++i) r[perm[i]] = m[i];
    return r;
  }

  template <typename Num>
  std::vector<Num> apply_fw_inverse(const std::vector<Num>& m) const {
    std::vector<Num> r(m.size());
    for (size_t i = 0; i < m.size(); ++i) r[i] = m[perm[i]];
    return r;
  }
};

// Canonical form for pi_1 = P^vee/Q^vee taken to sigma-coinvariants: classes of
// coweights modulo the lattice spanned by the simple coroots and (sigma-1)P^vee.
struct KottwitzForm {
  IMat u;
  IVec diag;

  IVec label(const IVec& m_fw) const {
    IVec img = u.apply(m_fw);
    IVec out;
    for (size_t i = 0; i < diag.size(); ++i) {
      if (diag[i] == 1) continue;
      Int d = diag[i];
      out.push_back(((img[i] % d) + d) % d);
    }
    return out;
  }

  Int order() const {
    Int o = 1;
    for (Int d : diag)
      if (d > 1) o *= d;
    return o;
  }
};

inline KottwitzForm make_kottwitz_form(const RootDatum& rd, const Twist& tw) {
  IMat gens(rd.n, 2 * rd.n);
  for (int i = 0; i < rd.n; ++i)
    for (int j = 0; j < rd.n; ++j) gens.at(j, i) = rd.cartan.at(i, j);  // alpha_i^vee in fw coords
  for (int i = 0; i < rd.n; ++i) {
    gens.at(tw(i), rd.n + i) += 1;
    gens.at(i, rd.n + i) -= 1;
  }
  auto d = diagonalize_columns(gens);
  for (Int x : d.diag)
    if (x == 0) throw std::logic_error("kottwitz form: quotient is not finite");
  return KottwitzForm{std::move(d.u), std::move(d.diag)};
}

// sigma-average of a coweight (fw coordinates)
inline RVec diamond(const Twist& tw, const RVec& mu_fw) {
  int ord = tw.order();
  RVec acc(mu_fw.size(), Rat(0));
  RVec cur = mu_fw;
  for (int k = 0; k < ord; ++k) {
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += cur[i];
    cur = tw.apply_fw(cur);
  }
  for (auto& x : acc) x /= ord;
  return acc;
}

inline RVec diamond_int(const Twist& tw, const IVec& mu_fw) { return diamond(tw, to_rvec(mu_fw)); }

// Folding of (Phi, sigma) to the split system on the sigma-orbits.
//
// For an orbit O of pairwise-commuting nodes, alpha'_O = sum alpha_i and
// alpha'_O^vee = (1/#O) sum alpha_i^vee; for an adjacent pair {i0,j0} with
// <alpha_{j0}^vee, alpha_{i0}> = -1, alpha'_O = 2(alpha_{i0}+alpha_{j0}) with
// the same coroot formula.  Fundamental weights fold as omega'_O = sum omega_i.
struct Fold {
  RootDatum folded;
  std::vector<IVec> orbits;      // folded node -> unfolded orbit (sorted)
  std::vector<int> orbit_of;     // unfolded node -> folded node
  std::vector<bool> pair_orbit;  // true for the adjacent-pair case

  int root_scale(int k) const { return pair_orbit[k] ? 2 : 1; }

  // sigma-invariant unfolded coweight (fw coords) -> folded fw coords
  template <typename Num>
  std::vector<Num> fold_coweight_fw(const std::vector<Num>& m) const {
    std::vector<Num> out(orbits.size(), Num(0));
    for (size_t k = 0; k < orbits.size(); ++k) {
      Num s = 0;
      for (Int i : orbits[k]) s += m[i];
      out[k] = s * Num(root_scale(int(k)));
    }
    return out;
  }

  // folded coweight in folded-coroot coordinates -> unfolded coroot coordinates
  RVec unfold_coweight_coroot(const RVec& c_folded, int n_unfolded) const {
    RVec out(n_unfolded, Rat(0));
    for (size_t k = 0; k < orbits.size(); ++k)
      for (Int i : orbits[k]) out[i] = c_folded[k] / Int(orbits[k].size());
    return out;
  }
};

inline Fold fold_to_split(const RootDatum& rd, const Twist& tw) {
  tw.validate(rd);
  Fold f;
  f.orbits = tw.orbits();
  f.orbit_of.assign(rd.n, -1);
  for (size_t k = 0; k < f.orbits.size(); ++k)
    for (Int i : f.orbits[k]) f.orbit_of[i] = int(k);
  f.pair_orbit.assign(f.orbits.size(), false);
  for (size_t k = 0; k < f.orbits.size(); ++k) {
    const IVec& orb = f.orbits[k];
    bool commuting = true;
    for (size_t a = 0; a < orb.size(); ++a)
      for (size_t b = a + 1; b < orb.size(); ++b)
        if (rd.adjacent(int(orb[a]), int(orb[b]))) commuting = false;
    if (commuting) continue;
    if (orb.size() == 2 && rd.cartan.at(orb[0], orb[1]) == -1 && rd.cartan.at(orb[1], orb[0]) == -1) {
      f.pair_orbit[k] = true;
    } else {
      throw std::invalid_argument("fold: orbit is neither commuting nor an A2 pair");
    }
  }

  int m = int(f.orbits.size());
  // cartan'(k,l) = <alpha'_k^vee, alpha'_l>
  IMat a(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      Rat s = 0;
      for (Int i : f.orbits[k])
        for (Int j : f.orbits[l]) s += rd.cartan.at(i, j);
      s *= f.root_scale(l);
      s /= Int(f.orbits[k].size());
      if (!is_integral(s)) throw std::logic_error("fold: non-integral folded Cartan entry");
      a.at(k, l) = Int(s.get_num().get_si());
    }
  f.folded = RootDatum::from_cartan(std::move(a), "fold(" + rd.label + ")");
  return f;
}

}  // namespace affweyl
