#include "chartan/homology.hpp"

#include "chartan/errors.hpp"
#include "chartan/magnus.hpp"

#include <algorithm>

namespace chartan {

namespace {

// Quotient rounded toward zero; the remainder then has smaller magnitude
// than the divisor, which is all the Euclidean steps need.
Integer quotient(const Integer& a, const Integer& b) { return a / b; }

// Smallest nonzero |m(r,c)| over r >= r0, c >= c0; ties go to the lowest row,
// then the lowest column. Returns false when the block is zero.
bool find_pivot(const IntegerMatrix& m, Eigen::Index r0, Eigen::Index c0, Eigen::Index& pr, Eigen::Index& pc) {
  bool found = false;
  Integer best;
  for (Eigen::Index r = r0; r < m.rows(); ++r)
    for (Eigen::Index c = c0; c < m.cols(); ++c) {
      if (m(r, c) == 0) continue;
      Integer a = mp::abs(m(r, c));
      if (!found || a < best) {
        found = true;
        best = a;
        pr = r;
        pc = c;
      }
    }
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& input) {
  const Eigen::Index rows = input.rows(), cols = input.cols();
  IntegerMatrix m = input;
  IntegerMatrix u = IntegerMatrix::Identity(rows, rows);
  IntegerMatrix v = IntegerMatrix::Identity(cols, cols);
  IntegerMatrix vinv = IntegerMatrix::Identity(cols, cols);

  // Row op: row(i) += k * row(j). Column op: col(i) += k * col(j); the inverse
  // of the column operation acts on rows of v^{-1}: row(j) -= k * row(i).
  auto add_row = [&](Eigen::Index i, Eigen::Index j, const Integer& k) {
    m.row(i) += k * m.row(j);
    u.row(i) += k * u.row(j);
  };
  auto add_col = [&](Eigen::Index i, Eigen::Index j, const Integer& k) {
    m.col(i) += k * m.col(j);
    v.col(i) += k * v.col(j);
    vinv.row(j) -= k * vinv.row(i);
  };
  auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    m.row(i).swap(m.row(j));
    u.row(i).swap(u.row(j));
  };
  auto swap_cols = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    m.col(i).swap(m.col(j));
    v.col(i).swap(v.col(j));
    vinv.row(i).swap(vinv.row(j));
  };

  std::vector<Integer> invariants;
  for (Eigen::Index t = 0; t < std::min(rows, cols); ++t) {
    Eigen::Index pr = 0, pc = 0;
    if (!find_pivot(m, t, t, pr, pc)) break;
    for (;;) {
      swap_rows(t, pr);
      swap_cols(t, pc);
      bool dirty = false;
      for (Eigen::Index r = t + 1; r < rows; ++r)
        if (m(r, t) != 0) {
          add_row(r, t, Integer(-quotient(m(r, t), m(t, t))));
          dirty = dirty || m(r, t) != 0;
        }
      for (Eigen::Index c = t + 1; c < cols; ++c)
        if (m(t, c) != 0) {
          add_col(c, t, Integer(-quotient(m(t, c), m(t, t))));
          dirty = dirty || m(t, c) != 0;
        }
      if (!dirty) {
        // Row and column are clear; enforce divisibility on the rest.
        Eigen::Index bad = -1;
        for (Eigen::Index r = t + 1; r < rows && bad < 0; ++r)
          for (Eigen::Index c = t + 1; c < cols; ++c)
            if (m(r, c) % m(t, t) != 0) {
              bad = r;
              break;
            }
        if (bad < 0) break;
        add_row(t, bad, Integer(1));
      }
      // Re-pick the smallest entry in row t and column t.
      pr = t;
      pc = t;
      Integer best = mp::abs(m(t, t));
      for (Eigen::Index r = t; r < rows; ++r)
        if (m(r, t) != 0 && (best == 0 || mp::abs(m(r, t)) < best)) best = mp::abs(m(r, t)), pr = r, pc = t;
      for (Eigen::Index c = t; c < cols; ++c)
        if (m(t, c) != 0 && (best == 0 || mp::abs(m(t, c)) < best)) best = mp::abs(m(t, c)), pr = t, pc = c;
    }
    if (m(t, t) < 0) {
      m.row(t) = -m.row(t);
      u.row(t) = -u.row(t);
    }
    invariants.push_back(m(t, t));
  }
  return {invariants, u, v, vinv, m};
}

IntegerMatrix abelianized_relators(const Presentation& p) {
  IntegerMatrix m(static_cast<Eigen::Index>(p.relators.size()), p.rank());
  for (std::size_t j = 0; j < p.relators.size(); ++j) {
    ExponentVector e = abelianize(p.relators[j], p.rank());
    for (int i = 0; i < p.rank(); ++i) m(static_cast<Eigen::Index>(j), i) = Integer(e(i));
  }
  return m;
}

namespace {

void apply_step(std::vector<Word>& words, const ReductionStep& step) {
  if (step.kind == ReductionStep::kSwap)
    std::swap(words[step.target], words[step.source]);
  else
    words[step.target] = word_product(words[step.target], word_power(words[step.source], step.power));
}

}  // namespace

std::vector<Word> replay_reduction(const std::vector<Word>& original, const std::vector<ReductionStep>& log) {
  std::vector<Word> words = original;
  for (const auto& step : log) apply_step(words, step);
  return words;
}

ReducedRelators reduce_relators(const Presentation& p) {
  // Row echelon form of the relator matrix by integer row operations only;
  // every row operation is replayed on the relator words.
  IntegerMatrix m = abelianized_relators(p);
  ReducedRelators out;
  out.relators = p.relators;
  auto record = [&](ReductionStep step) {
    if (step.kind == ReductionStep::kSwap) {
      if (step.target == step.source) return;
      m.row(step.target).swap(m.row(step.source));
    } else {
      m.row(step.target) += Integer(step.power) * m.row(step.source);
    }
    apply_step(out.relators, step);
    out.log.push_back(step);
  };

  const auto rows = static_cast<int>(m.rows());
  int t = 0;
  for (Eigen::Index c = 0; c < m.cols() && t < rows; ++c) {
    for (;;) {
      int pivot = -1;
      for (int r = t; r < rows; ++r)
        if (m(r, c) != 0 && (pivot < 0 || mp::abs(m(r, c)) < mp::abs(m(pivot, c)))) pivot = r;
      if (pivot < 0) break;
      record({ReductionStep::kSwap, t, pivot, 0});
      bool clear = true;
      for (int r = t + 1; r < rows; ++r) {
        if (m(r, c) == 0) continue;
        Integer q = quotient(m(r, c), m(t, c));
        record({ReductionStep::kMultiply, r, t, -q.convert_to<long long>()});
        clear = clear && m(r, c) == 0;
      }
      if (clear) break;
    }
    bool has_pivot = t < rows && m(t, c) != 0;
    if (has_pivot) ++t;
  }
  out.ell = t;
  for (int r = t; r < rows; ++r)
    if (m.row(r) != IntegerMatrix::Zero(1, m.cols()))
      throw CrossCheckError("reduce_relators: nonzero row below the echelon pivots");
  return out;
}

HomologyData compute_h1(const Presentation& p) {
  HomologyData h;
  h.generator_count = p.rank();
  SmithForm snf = smith_normal_form(abelianized_relators(p));
  const int s = static_cast<int>(snf.invariants.size());
  h.h1_rank = p.rank() - s;
  for (const auto& d : snf.invariants)
    if (d > 1) h.torsion.push_back(d);
  // Coordinates in the basis of rows of v^{-1}: y = x v. The last h1_rank of
  // them are the free coordinates.
  h.free_basis_projection = RationalMatrix(h.h1_rank, p.rank());
  h.lifted_generators = IntegerMatrix(h.h1_rank, p.rank());
  for (int k = 0; k < h.h1_rank; ++k)
    for (int i = 0; i < p.rank(); ++i) {
      h.free_basis_projection(k, i) = Rational(snf.v(i, s + k));
      h.lifted_generators(k, i) = snf.v_inverse(s + k, i);
    }
  h.reduction = reduce_relators(p);
  for (int j = h.reduction.ell; j < static_cast<int>(h.reduction.relators.size()); ++j)
    h.c_classes.push_back(push_forward(h.free_basis_projection, lambda2_class(h.reduction.relators[j], p.rank())));
  return h;
}

Lambda2Vector c_class(const HomologyData& h, int j) {
  if (j < h.reduction.ell || j >= static_cast<int>(h.reduction.relators.size()))
    throw PreconditionError("c_class: relator index " + std::to_string(j) +
                            " does not have trivial abelianization");
  return h.c_classes[j - h.reduction.ell];
}

ESpace e_space_basis(const HomologyData& h) {
  const int r = h.h1_rank;
  const Eigen::Index triples = triple_count(r);
  ESpace e;
  if (triples == 0) return e;
  // Rows span S = { c_j ^ e_m }; E is its annihilator.
  RationalMatrix span(static_cast<Eigen::Index>(h.c_classes.size()) * r, triples);
  Eigen::Index row = 0;
  for (const auto& c : h.c_classes)
    for (int m = 0; m < r; ++m) {
      RationalVector unit = RationalVector::Zero(r);
      unit(m) = 1;
      span.row(row++) = wedge(unit, c).transpose();
    }
  RationalMatrix kernel = kernel_basis(span);
  e.dimension = static_cast<int>(kernel.cols());
  for (Eigen::Index k = 0; k < kernel.cols(); ++k) e.basis.push_back(kernel.col(k));
  return e;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kSmooth: return "SMOOTH";
    case Verdict::kNotSmooth: return "NOT_SMOOTH";
    default: return "UNKNOWN";
  }
}

bool verify_f2_witness(const Presentation& p, const F2Witness& witness, std::string* why) {
  auto fail = [&](const std::string& text) {
    if (why) *why = text;
    return false;
  };
  if (static_cast<int>(witness.hom.images.size()) != p.rank())
    return fail("witness has " + std::to_string(witness.hom.images.size()) + " images for " +
                std::to_string(p.rank()) + " generators");
  for (const auto& img : witness.hom.images)
    if (img.max_generator() > 2) return fail("witness image leaves F_2");
  FreeGroupOps ops;
  for (std::size_t j = 0; j < p.relators.size(); ++j)
    if (!evaluate_hom(p.relators[j], witness.hom, ops).empty())
      return fail("witness does not kill relator " + std::to_string(j + 1));
  if (!is_surjective_to_f2(witness.hom.images)) return fail("witness images do not generate F_2");
  return true;
}

SmoothnessReport smoothness_verdict(const Presentation& p, const std::optional<F2Witness>& witness) {
  HomologyData h = compute_h1(p);
  SmoothnessReport report;
  report.n = h.h1_rank;
  const std::string n_text = "n = dim H1 = " + std::to_string(h.h1_rank);
  if (h.h1_rank < 2) {
    report.verdict = Verdict::kSmooth;
    report.reason = n_text + " < 2";
    return report;
  }
  if (h.h1_rank > 2) {
    report.verdict = Verdict::kNotSmooth;
    report.reason = n_text + " > 2";
    return report;
  }
  if (h.c_classes.empty()) {
    report.verdict = Verdict::kSmooth;
    report.reason = n_text + " and no relator with trivial abelianization, so H2(G,Z) = 0";
    return report;
  }
  if (p.deficiency() >= 2) {
    report.verdict = Verdict::kSmooth;
    report.reason = n_text + " and the presentation has deficiency " + std::to_string(p.deficiency());
    return report;
  }
  if (witness) {
    std::string why;
    if (verify_f2_witness(p, *witness, &why)) {
      report.verdict = Verdict::kSmooth;
      report.reason = n_text + " and the supplied witness is a surjection onto F2";
      return report;
    }
    report.verdict = Verdict::kUnknown;
    report.reason = n_text + "; supplied witness rejected: " + why;
    return report;
  }
  report.verdict = Verdict::kUnknown;
  report.reason = n_text + ", " + std::to_string(h.c_classes.size()) +
                  " possible H2 generator(s), deficiency " + std::to_string(p.deficiency()) +
                  " and no surjection onto F2 supplied";
  return report;
}

}  // namespace chartan
