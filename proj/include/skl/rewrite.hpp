#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <unordered_map>
#include <vector>

#include "skl/ncpoly.hpp"

namespace skl {

// One rewrite rule: the deglex-leading word `lead` equals `tail` in the
// algebra, every tail word is irreducible and deglex-smaller than `lead`,
// and no proper subword of `lead` is the lead of another rule.
template <class S>
struct Rule {
  Word lead;
  NCPoly<S> tail;
};

// Sparse coordinate vector over the irreducible-word basis of one degree.
template <class S>
using SparseVec = std::vector<std::pair<int, S>>;  // sorted by index

// An element of the degree-d graded component, in reduced coordinates.
template <class S>
struct GradedVec {
  int degree = 0;
  SparseVec<S> v;
  bool is_zero() const { return v.empty(); }
};

// Truncated confluent rewriting for the quadratic algebra
//   k<x,y,z> / (a yz + b zy + c x^2,  a zx + b xz + c y^2,  a xy + b yx + c z^2)
// with the deglex order x < y < z, up to a fixed degree cap.
//
// Normal forms are computed through per-degree border tables: for each
// irreducible word u of degree d-1 and letter c, the table stores the
// canonical coordinates of u*c over the irreducible words of degree d.  The
// tables are produced degree by degree by exact linear elimination: since the
// ideal is generated in degree 2, the degree-d relation space is spanned by
// (basis of degree d-2) x (the three defining relations), so one reduced
// echelon pass per degree yields both the new basis and the resolution of
// every reducible border word.  Pivot words not containing a shorter leading
// word become the (interreduced) rule list; the expected dimension count
// (d+1)(d+2)/2 per degree certifies confluence below the cap.
template <class S>
class RewriteSystem {
public:
  RewriteSystem(std::array<S, 3> params, int degree_cap)
      : params_(std::move(params)), cap_(degree_cap) {
    if (cap_ < 2)
      throw DomainError("degree cap must be >= 2, got " + std::to_string(cap_));
    bases_.resize(cap_ + 1);
    border_.resize(cap_ + 1);
    index_.resize(cap_ + 1);
    bases_[0] = {Word()};
    index_[0][Word()] = 0;
    bases_[1] = {"x", "y", "z"};
    for (int c = 0; c < 3; ++c) {
      index_[1][bases_[1][c]] = c;
      border_[1].push_back({{c, S(1)}});
    }
    for (int d = 2; d <= cap_; ++d) build_degree_(d);
  }

  const std::array<S, 3>& params() const { return params_; }
  int degree_cap() const { return cap_; }
  const std::vector<Rule<S>>& rules() const { return rules_; }

  const std::vector<Word>& basis(int d) const {
    check_degree_(d);
    return bases_[d];
  }

  int basis_index(int d, const Word& w) const {
    check_degree_(d);
    auto it = index_[d].find(w);
    return it == index_[d].end() ? -1 : it->second;
  }

  // Graded dimensions dim S_0 .. dim S_cap.
  std::vector<int> hilbert_dims() const {
    std::vector<int> dims;
    for (int d = 0; d <= cap_; ++d)
      dims.push_back(static_cast<int>(bases_[d].size()));
    return dims;
  }

  // ---- graded-vector arithmetic (the nf workhorse) ----

  GradedVec<S> unit() const { return {0, {{0, S(1)}}}; }

  GradedVec<S> from_basis_word(int d, const Word& w) const {
    int i = basis_index(d, w);
    if (i < 0) throw InternalError("from_basis_word: not a basis word: " + w);
    return {d, {{i, S(1)}}};
  }

  GradedVec<S> mul_letter(const GradedVec<S>& gv, int letter) const {
    int d = gv.degree + 1;
    check_degree_(d);
    std::vector<S> acc(bases_[d].size(), S(0));
    for (const auto& [i, coef] : gv.v) {
      const SparseVec<S>& row = border_[d][3 * i + letter];
      for (const auto& [j, rc] : row) acc[j] += coef * rc;
    }
    return {d, compress_(acc)};
  }

  GradedVec<S> mul_word(GradedVec<S> gv, const Word& w) const {
    for (char ch : w) gv = mul_letter(gv, letter_index(ch));
    return gv;
  }

  // Right-multiplication by a homogeneous polynomial.
  GradedVec<S> mul_poly(const GradedVec<S>& gv, const NCPoly<S>& p) const {
    if (p.is_zero()) return {gv.degree, {}};
    if (!p.is_homogeneous())
      throw InternalError("mul_poly requires a homogeneous factor");
    int d = gv.degree + p.degree();
    check_degree_(d);
    std::vector<S> acc(bases_[d].size(), S(0));
    for (const auto& [w, c] : p.terms()) {
      GradedVec<S> t = mul_word(gv, w);
      for (const auto& [j, tc] : t.v) acc[j] += tc * c;
    }
    return {d, compress_(acc)};
  }

  NCPoly<S> to_poly(const GradedVec<S>& gv) const {
    NCPoly<S> p;
    for (const auto& [i, c] : gv.v) p.add_term(bases_[gv.degree][i], c);
    return p;
  }

  GradedVec<S> reduce_component(const NCPoly<S>& homo) const {
    if (homo.is_zero()) return {0, {}};
    int d = homo.degree();
    check_degree_(d);
    std::vector<S> acc(bases_[d].size(), S(0));
    for (const auto& [w, c] : homo.terms()) {
      GradedVec<S> t = mul_word(unit(), w);
      for (const auto& [j, tc] : t.v) acc[j] += tc * c;
    }
    return {d, compress_(acc)};
  }

  // Canonical normal form of an arbitrary polynomial of degree <= cap.
  NCPoly<S> normal_form(const NCPoly<S>& p) const {
    if (p.degree() > cap_)
      throw CapExceededError("normal_form: degree " +
                             std::to_string(p.degree()) + " exceeds cap " +
                             std::to_string(cap_));
    NCPoly<S> out;
    for (int d = 0; d <= p.degree(); ++d) {
      NCPoly<S> comp = p.component(d);
      if (!comp.is_zero()) out += to_poly(reduce_component(comp));
    }
    return out;
  }

  bool is_normal(const NCPoly<S>& p) const { return normal_form(p) == p; }

  struct CentralityReport {
    bool central = true;
    int witness_generator = -1;        // 0,1,2 when not central
    NCPoly<S> witness_commutator;      // nonzero nf of [p, generator]
  };

  // Checks [p, g] = 0 for g in {x, y, z}; sufficient for centrality since
  // the generators span degree 1.  Needs deg(p) + 1 <= cap.
  CentralityReport is_central(const NCPoly<S>& p) const {
    CentralityReport rep;
    for (int g = 0; g < 3; ++g) {
      NCPoly<S> comm = commutator(p, NCPoly<S>::generator(g));
      NCPoly<S> nf = normal_form(comm);
      if (!nf.is_zero()) {
        rep.central = false;
        rep.witness_generator = g;
        rep.witness_commutator = std::move(nf);
        return rep;
      }
    }
    return rep;
  }

  // The three defining relations as polynomials (for tests and reports).
  std::array<NCPoly<S>, 3> relations() const {
    const S &a = params_[0], &b = params_[1], &c = params_[2];
    auto mk = [](const char* w1, const char* w2, const char* w3, const S& ca,
                 const S& cb, const S& cc) {
      NCPoly<S> p;
      p.add_term(w1, ca);
      p.add_term(w2, cb);
      p.add_term(w3, cc);
      return p;
    };
    return {mk("yz", "zy", "xx", a, b, c), mk("zx", "xz", "yy", a, b, c),
            mk("xy", "yx", "zz", a, b, c)};
  }

  // S-polynomial of two rules along a proper overlap (suffix of r1.lead of
  // length k = prefix of r2.lead): tail1 * rest2  -  rest1 * tail2 where
  // lead1 * rest2 = rest1 * lead2 is the overlap word.  Its normal form must
  // vanish below the cap; exposed so tests can certify overlap closure.
  NCPoly<S> overlap_spoly(const Rule<S>& r1, const Rule<S>& r2, int k) const {
    const Word& l1 = r1.lead;
    const Word& l2 = r2.lead;
    if (k <= 0 || k >= static_cast<int>(l1.size()) ||
        k >= static_cast<int>(l2.size()) ||
        l1.substr(l1.size() - k) != l2.substr(0, k))
      throw DomainError("overlap_spoly: not a proper overlap");
    Word left = l1.substr(0, l1.size() - k);   // overlap = left + l2
    Word right = l2.substr(k);                 // overlap = l1 + right
    NCPoly<S> lhs = r1.tail * NCPoly<S>::term(right, S(1));
    NCPoly<S> rhs = NCPoly<S>::term(left, S(1)) * r2.tail;
    return lhs - rhs;
  }

private:
  void check_degree_(int d) const {
    if (d < 0 || d > cap_)
      throw CapExceededError("degree " + std::to_string(d) +
                             " outside cap " + std::to_string(cap_));
  }

  static SparseVec<S> compress_(const std::vector<S>& acc) {
    SparseVec<S> v;
    for (size_t i = 0; i < acc.size(); ++i)
      if (!is_zero(acc[i])) v.emplace_back(static_cast<int>(i), acc[i]);
    return v;
  }

  // Sparse row over elimination slots (slot 0 = deglex-largest column).
  using Row = std::vector<std::pair<int, S>>;  // sorted by slot

  static void row_axpy_(Row& r, const S& f, const Row& src) {
    // r -= f * src, merging sorted slot lists
    Row out;
    out.reserve(r.size() + src.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < src.size()) {
      if (j >= src.size() || (i < r.size() && r[i].first < src[j].first)) {
        out.push_back(std::move(r[i++]));
      } else if (i >= r.size() || src[j].first < r[i].first) {
        S v = -(f * src[j].second);
        if (!is_zero(v)) out.emplace_back(src[j].first, std::move(v));
        ++j;
      } else {
        S v = r[i].second - f * src[j].second;
        if (!is_zero(v)) out.emplace_back(r[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    r = std::move(out);
  }

  void build_degree_(int d) {
    const std::vector<Word>& prev = bases_[d - 1];
    const std::vector<Word>& prev2 = bases_[d - 2];
    const int ncols = static_cast<int>(prev.size()) * 3;

    // Border words, and the elimination slot order (deglex descending, i.e.
    // slot 0 eliminates the largest word first so every pivot resolves a
    // word into strictly smaller ones).
    std::vector<Word> colword(ncols);
    for (size_t i = 0; i < prev.size(); ++i)
      for (int c = 0; c < 3; ++c)
        colword[3 * i + c] = prev[i] + kLetters[c];
    std::vector<int> order(ncols);
    for (int i = 0; i < ncols; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int p, int q) {
      return colword[p] > colword[q];  // same length: plain lex, descending
    });
    std::vector<int> slot_of_col(ncols);
    for (int s = 0; s < ncols; ++s) slot_of_col[order[s]] = s;

    // Relation rows: image of (basis of degree d-2) x (three relations).
    struct RelTerm { int c1, c2; const S* coeff; };
    const S &a = params_[0], &b = params_[1], &c = params_[2];
    const std::array<std::array<RelTerm, 3>, 3> rels = {{
        {{{1, 2, &a}, {2, 1, &b}, {0, 0, &c}}},
        {{{2, 0, &a}, {0, 2, &b}, {1, 1, &c}}},
        {{{0, 1, &a}, {1, 0, &b}, {2, 2, &c}}},
    }};

    std::vector<Row> pivrows;
    std::vector<int> pivot_at_slot(ncols, -1);

    for (size_t j = 0; j < prev2.size(); ++j) {
      for (const auto& rel : rels) {
        // assemble the row sparsely, then sort by slot
        std::unordered_map<int, S> entries;
        for (const RelTerm& t : rel) {
          const SparseVec<S>& bv = border_[d - 1][3 * j + t.c1];
          for (const auto& [i, coef] : bv) {
            int slot = slot_of_col[3 * i + t.c2];
            auto [it, fresh] = entries.emplace(slot, coef * (*t.coeff));
            if (!fresh) it->second += coef * (*t.coeff);
          }
        }
        Row row;
        row.reserve(entries.size());
        for (auto& [slot, v] : entries)
          if (!is_zero(v)) row.emplace_back(slot, std::move(v));
        std::sort(row.begin(), row.end(),
                  [](const auto& p, const auto& q) { return p.first < q.first; });

        // full reduction against current pivots
        size_t pos = 0;
        while (pos < row.size()) {
          int piv = pivot_at_slot[row[pos].first];
          if (piv < 0) {
            ++pos;
            continue;
          }
          S f = row[pos].second;  // pivot rows have leading coefficient 1
          row_axpy_(row, f, pivrows[piv]);
        }
        if (row.empty()) continue;

        // normalize and register as a new pivot
        S inv = S(1) / row.front().second;
        if (!(inv == S(1)))
          for (auto& [slot, v] : row) v = v * inv;
        int lead_slot = row.front().first;
        // eliminate this column from the established pivot rows (full RREF)
        for (Row& pr : pivrows) {
          auto it = std::lower_bound(
              pr.begin(), pr.end(), lead_slot,
              [](const auto& e, int s) { return e.first < s; });
          if (it != pr.end() && it->first == lead_slot) row_axpy_(pr, it->second, row);
        }
        pivot_at_slot[lead_slot] = static_cast<int>(pivrows.size());
        pivrows.push_back(std::move(row));
      }
    }

    // Quotient basis = non-pivot border words, deglex ascending.
    std::vector<Word> basis;
    for (int s = ncols - 1; s >= 0; --s)
      if (pivot_at_slot[s] < 0) basis.push_back(colword[order[s]]);
    const int expected = (d + 1) * (d + 2) / 2;
    if (static_cast<int>(basis.size()) != expected)
      throw StructureError(
          "graded dimension mismatch at degree " + std::to_string(d) +
          ": got " + std::to_string(basis.size()) + ", expected " +
          std::to_string(expected) +
          " (parameter triple is degenerate or outside the smooth family)");
    bases_[d] = std::move(basis);
    for (size_t i = 0; i < bases_[d].size(); ++i) index_[d][bases_[d][i]] = i;

    // Border table: unit vectors for basis words, pivot-row resolutions for
    // reducible ones (lead slot coefficient 1, so word = -sum of the rest).
    border_[d].resize(ncols);
    for (int col = 0; col < ncols; ++col) {
      int slot = slot_of_col[col];
      int piv = pivot_at_slot[slot];
      if (piv < 0) {
        border_[d][col] = {{index_[d].at(colword[col]), S(1)}};
        continue;
      }
      SparseVec<S> res;
      for (const auto& [s, v] : pivrows[piv]) {
        if (s == slot) continue;
        res.emplace_back(index_[d].at(colword[order[s]]), -v);
      }
      std::sort(res.begin(), res.end(),
                [](const auto& p, const auto& q) { return p.first < q.first; });
      border_[d][col] = std::move(res);
    }

    // Minimal new rules at this degree: pivot words with no shorter leading
    // word as a proper suffix (interior subwords sit inside an irreducible
    // prefix, so suffixes are the only candidates).
    for (int s = 0; s < ncols; ++s) {
      if (pivot_at_slot[s] < 0) continue;
      const Word& w = colword[order[s]];
      bool minimal = true;
      for (size_t len = 2; len < w.size() && minimal; ++len)
        if (rule_leads_.count(w.substr(w.size() - len))) minimal = false;
      if (!minimal) continue;
      NCPoly<S> tail;
      for (const auto& [i, coef] : border_[d][order[s]])
        tail.add_term(bases_[d][i], coef);
      rules_.push_back({w, std::move(tail)});
    }
    // keep the rule list deglex-sorted within the degree
    std::sort(rules_.begin(), rules_.end(),
              [](const Rule<S>& r1, const Rule<S>& r2) {
                return deglex_less(r1.lead, r2.lead);
              });
    for (const Rule<S>& r : rules_) rule_leads_.insert(r.lead);
  }

  std::array<S, 3> params_;
  int cap_;
  std::vector<std::vector<Word>> bases_;
  std::vector<std::vector<SparseVec<S>>> border_;
  std::vector<std::unordered_map<Word, int>> index_;
  std::vector<Rule<S>> rules_;
  std::set<Word> rule_leads_;
};

// Naive term-rewriting normal form used as an independent oracle in tests:
// repeatedly replaces the chosen occurrence (leftmost or rightmost redex) of
// any rule lead.  Slow but obviously correct; must agree with the table nf.
enum class ReduceStrategy { kLeftmost, kRightmost };

template <class S>
NCPoly<S> naive_normal_form(const std::vector<Rule<S>>& rules,
                            const NCPoly<S>& input, ReduceStrategy strategy) {
  NCPoly<S> work = input;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [w, coef] : work.terms()) {
      // find the chosen redex in w
      int best_pos = -1;
      const Rule<S>* best_rule = nullptr;
      for (const Rule<S>& r : rules) {
        if (r.lead.size() > w.size()) continue;
        size_t pos = (strategy == ReduceStrategy::kLeftmost)
                         ? w.find(r.lead)
                         : w.rfind(r.lead);
        if (pos == Word::npos) continue;
        int p = static_cast<int>(pos);
        bool better =
            best_pos < 0 ||
            (strategy == ReduceStrategy::kLeftmost ? p < best_pos
                                                   : p > best_pos);
        if (better) {
          best_pos = p;
          best_rule = &r;
        }
      }
      if (best_rule == nullptr) continue;
      Word left = w.substr(0, best_pos);
      Word right = w.substr(best_pos + best_rule->lead.size());
      NCPoly<S> replacement = NCPoly<S>::term(left, coef) *
                              best_rule->tail *
                              NCPoly<S>::term(right, S(1));
      NCPoly<S> removed = NCPoly<S>::term(w, coef);
      work -= removed;
      work += replacement;
      changed = true;
      break;  // term map mutated; restart the scan
    }
  }
  return work;
}

}  // namespace skl
