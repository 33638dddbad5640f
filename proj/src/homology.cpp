#include "relcone/homology.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

#include "relcone/error.hpp"
#include "relcone/parallel.hpp"

namespace relcone {

namespace {

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

ZVector scale_to_integer(const QVector& v) {
  Integer l = denominator_lcm(v);
  ZVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(Rational(x * Rational(l)).get_num());
  return out;
}

// Kernel over Q of a rational matrix, as an integer basis.
ZMatrix kernel_q(const QMatrix& m) { return kernel_basis(clear_denominators(m)); }

std::string h_label(int n, const std::string& what) { return "H_" + std::to_string(n) + "(" + what + ")"; }

bool mode_is_field(Subquotient::Mode m) { return m == Subquotient::Mode::Field; }

}  // namespace

bool isomorphic(const AbGroup& a, const AbGroup& b) {
  return a.free_rank == b.free_rank && a.torsion == b.torsion;
}

// ------------------------------------------------------------ subquotient

Subquotient::Subquotient(ZMatrix cycles, const QMatrix& boundaries, Mode mode, Integer modulus)
    : mode_(mode), modulus_(std::move(modulus)), cycles_(std::move(cycles)), boundaries_(boundaries) {
  if (boundaries_.rows() != cycles_.rows()) throw ShapeMismatch("boundaries and cycles live in different ambients");
  const std::size_t k = cycles_.cols();
  cycles_snf_ = snf(cycles_);
  if (cycles_snf_.rank != k) throw InvalidComplex("cycle basis is not linearly independent");

  C_ = ZMatrix(k, boundaries_.cols());
  for (std::size_t j = 0; j < boundaries_.cols(); ++j) {
    QVector b = boundaries_.column(j);
    if (mode_ == Mode::Field) {
      auto a = solve_rational(cycles_snf_, b);
      if (!a) throw NotACycle("boundary outside the span of the cycles");
      C_.set_column(j, scale_to_integer(*a));
    } else {
      auto a = solve_integer(cycles_snf_, to_integer(b));
      if (!a) throw NotACycle("boundary outside the cycle lattice");
      C_.set_column(j, *a);
    }
  }

  SNFResult s = snf(C_);
  ZMatrix U = s.U;
  U_inv_ = s.U_inv;
  for (std::size_t i = 0; i < k; ++i) {
    Integer order = i < s.rank ? s.D(i, i) : Integer(0);
    bool keep = mode_ == Mode::Field ? order == 0 : order != 1;
    if (!keep) continue;
    kept_.push_back(i);
    orders_.push_back(order);
  }

  for (std::size_t idx = 0; idx < kept_.size(); ++idx) {
    const std::size_t i = kept_[idx];
    ZVector g = cycles_ * U.column(i);
    auto first = std::find_if(g.begin(), g.end(), [](const Integer& x) { return x != 0; });
    if (first != g.end() && *first < 0) {
      for (auto& x : g) x = -x;
      for (std::size_t c = 0; c < U_inv_.cols(); ++c) U_inv_(i, c) = -U_inv_(i, c);
    }
    group_.generators.push_back(std::move(g));
    const Integer& o = orders_[idx];
    bool free = mode_ == Mode::Modular ? o == modulus_ : o == 0;
    if (free) {
      ++group_.free_rank;
    } else {
      group_.torsion.push_back(o);
    }
  }
}

QVector Subquotient::lattice_coords(const QVector& z) const {
  if (z.size() != ambient()) throw ShapeMismatch("vector of length " + std::to_string(z.size()));
  if (mode_ == Mode::Field) {
    auto a = solve_rational(cycles_snf_, z);
    if (!a) throw NotACycle("vector is not a cycle");
    return *a;
  }
  for (const auto& x : z)
    if (x.get_den() != 1) throw NotACycle("non-integral chain over an integral ring");
  auto a = solve_integer(cycles_snf_, to_integer(z));
  if (!a) throw NotACycle("vector is not a cycle");
  return to_rational(*a);
}

QVector Subquotient::coords(const QVector& z) const {
  QVector a = lattice_coords(z);
  QVector out;
  out.reserve(kept_.size());
  for (std::size_t idx = 0; idx < kept_.size(); ++idx) {
    const std::size_t i = kept_[idx];
    Rational b = 0;
    for (std::size_t c = 0; c < a.size(); ++c) b += Rational(U_inv_(i, c)) * a[c];
    if (orders_[idx] != 0) b = Rational(mod_floor(b.get_num(), orders_[idx]));
    out.push_back(b);
  }
  return out;
}

bool Subquotient::is_boundary(const QVector& z) const {
  QVector c = coords(z);
  return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; });
}

// --------------------------------------------------------------- homology

Subquotient homology_subquotient(const GradedComplex& c, int n) {
  const QMatrix d_n = c.diff(n);
  const QMatrix d_up = c.diff(n + 1);
  switch (c.ring().kind()) {
    case RingKind::Int:
      return Subquotient(kernel_basis(to_integer(d_n)), d_up, Subquotient::Mode::Integral);
    case RingKind::Rat:
      return Subquotient(kernel_q(d_n), d_up, Subquotient::Mode::Field);
    case RingKind::IntMod: {
      const Integer& m = c.ring().modulus();
      SNFResult s = snf(to_integer(d_n));
      ZMatrix cycles = s.V_inv;
      for (std::size_t i = 0; i < s.rank; ++i) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), s.D(i, i).get_mpz_t(), m.get_mpz_t());
        Integer step = m / g;
        for (std::size_t r = 0; r < cycles.rows(); ++r) cycles(r, i) *= step;
      }
      QMatrix bounds = hstack(d_up, Rational(m) * QMatrix::identity(c.rank(n)));
      return Subquotient(std::move(cycles), bounds, Subquotient::Mode::Modular, m);
    }
    case RingKind::AngleQ:
      break;
  }
  throw UnsupportedRing("homology over " + c.ring().name() + " is not computed");
}

AbGroup homology_at(const GradedComplex& c, int n) { return homology_subquotient(c, n).group(); }

AbGroup cohomology_at(const GradedComplex& c, int p) { return homology_at(c, -p); }

std::map<int, AbGroup> homology_all(const GradedComplex& c) {
  std::map<int, AbGroup> out;
  if (c.empty()) return out;
  const int lo = c.lo();
  const std::size_t count = static_cast<std::size_t>(c.hi() - lo + 1);
  std::vector<AbGroup> groups(count);
  parallel_for(count, [&](std::size_t i) { groups[i] = homology_at(c, lo + static_cast<int>(i)); });
  for (std::size_t i = 0; i < count; ++i) out.emplace(lo + static_cast<int>(i), std::move(groups[i]));
  return out;
}

QMatrix induced_map(const ComplexMap& f, int n) {
  if (!f.is_chain_map()) throw InvalidChainMap("induced_map: not a chain map");
  Subquotient src = homology_subquotient(f.src(), n);
  Subquotient dst = homology_subquotient(f.dst(), n);
  const QMatrix fn = f.at(n);
  QMatrix m(dst.ngens(), src.ngens());
  for (std::size_t j = 0; j < src.ngens(); ++j) {
    m.set_column(j, dst.coords(fn * to_rational(src.group().generators[j])));
  }
  return m;
}

QMatrix connecting_hom(const ComplexMap& f, int n) {
  if (!f.is_chain_map()) throw InvalidChainMap("connecting_hom: not a chain map");
  const GradedComplex& X = f.src();
  GradedComplex cone = cone_of_map(f);
  Subquotient src = homology_subquotient(X, n - 1);
  Subquotient dst = homology_subquotient(f.dst(), n - 1);
  const QMatrix d = cone.diff(n);
  QMatrix m(dst.ngens(), src.ngens());
  for (std::size_t j = 0; j < src.ngens(); ++j) {
    ConeElement lift{n, to_rational(src.group().generators[j]), QVector(f.dst().rank(n), 0)};
    ConeElement image = ConeElement::split(n - 1, d * lift.flatten(), X.rank(n - 2));
    m.set_column(j, dst.coords(image.eta));
  }
  if (m != induced_map(f, n - 1)) throw std::logic_error("connecting homomorphism differs from f_*");
  return m;
}

// -------------------------------------------------------------------- LES

namespace {

using Lift = std::function<QVector(const QVector&)>;

struct Stage {
  std::string label;
  int degree;
  Subquotient sq;
};

struct Arrow {
  std::string label;
  Lift lift;
};

// Incoming images are ambient vectors of `here`; the outgoing arrow lands in `next`.
LESPosition check_position(const Stage& here, const std::vector<QVector>& incoming, const Arrow* out,
                           const Stage* next) {
  const Subquotient& sq = here.sq;
  const bool field = mode_is_field(sq.mode());
  const std::size_t k = sq.cycles().cols();

  ZMatrix im = sq.boundary_coords();
  for (const auto& v : incoming) {
    QVector a = sq.lattice_coords(v);
    ZMatrix col(k, 1);
    col.set_column(0, field ? scale_to_integer(a) : to_integer(a));
    im = hstack(im, col);
  }

  ZMatrix ker = ZMatrix::identity(k);
  if (out != nullptr) {
    const Subquotient& nsq = next->sq;
    QMatrix m_out(nsq.ambient(), k);
    for (std::size_t j = 0; j < k; ++j) m_out.set_column(j, out->lift(to_rational(sq.cycles().column(j))));
    QMatrix sys = hstack(m_out, -nsq.boundaries());
    ZMatrix kb = field ? kernel_q(sys) : kernel_basis(to_integer(sys));
    ker = kb.block(0, 0, k, kb.cols());
  }

  LESPosition p;
  p.exact = same_lattice(im, ker, field);
  p.image_rank = rank(im);
  p.kernel_rank = rank(ker);
  return p;
}

LESReport assemble(const std::vector<Stage>& stages, const std::vector<Arrow>& arrows) {
  LESReport r;
  for (const auto& s : stages) r.terms.push_back({s.label, s.degree, s.sq.group()});
  std::vector<std::vector<QVector>> images(stages.size());
  for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
    const Subquotient& src = stages[i].sq;
    const Subquotient& dst = stages[i + 1].sq;
    QMatrix m(dst.ngens(), src.ngens());
    for (std::size_t j = 0; j < src.ngens(); ++j) {
      QVector img = arrows[i].lift(to_rational(src.group().generators[j]));
      m.set_column(j, dst.coords(img));
      images[i + 1].push_back(std::move(img));
    }
    r.map_labels.push_back(arrows[i].label);
    r.maps.push_back(std::move(m));
  }
  r.positions.resize(stages.size());
  parallel_for(stages.size(), [&](std::size_t i) {
    const bool has_out = i + 1 < stages.size();
    LESPosition p = check_position(stages[i], images[i], has_out ? &arrows[i] : nullptr,
                                   has_out ? &stages[i + 1] : nullptr);
    p.index = i;
    r.positions[i] = p;
  });
  return r;
}

struct DegreeSpan {
  int lo, hi;
};

// Range of n for which H_n(Y), H_n(f) or H_{n-1}(X) can be nonzero, padded by one.
std::optional<DegreeSpan> cone_span(const ComplexMap& f) {
  const GradedComplex& X = f.src();
  const GradedComplex& Y = f.dst();
  if (X.empty() && Y.empty()) return std::nullopt;
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  if (!X.empty()) {
    lo = std::min(lo, X.lo() + 1);
    hi = std::max(hi, X.hi() + 1);
  }
  if (!Y.empty()) {
    lo = std::min(lo, Y.lo());
    hi = std::max(hi, Y.hi());
  }
  return DegreeSpan{lo - 1, hi + 1};
}

QVector head(const QVector& v, std::size_t n) { return QVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)); }
QVector tail(const QVector& v, std::size_t n) { return QVector(v.begin() + static_cast<std::ptrdiff_t>(n), v.end()); }
QVector concat(const QVector& a, const QVector& b) {
  QVector v = a;
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

}  // namespace

bool LESReport::exact() const {
  return std::all_of(positions.begin(), positions.end(), [](const LESPosition& p) { return p.exact; });
}

LESReport les_of_cone(const ComplexMap& f) {
  if (!f.is_chain_map()) throw InvalidChainMap("les_of_cone: not a chain map");
  auto span = cone_span(f);
  if (!span) return {};
  const GradedComplex& X = f.src();
  const GradedComplex& Y = f.dst();
  GradedComplex cone = cone_of_map(f);

  std::vector<Stage> stages;
  std::vector<Arrow> arrows;
  for (int n = span->hi; n >= span->lo; --n) {
    const std::size_t x_rank = X.rank(n - 1);
    const QMatrix f_low = f.at(n - 1);
    stages.push_back({h_label(n, "Y"), n, homology_subquotient(Y, n)});
    arrows.push_back({"j", [x_rank](const QVector& eta) { return concat(QVector(x_rank, 0), eta); }});
    stages.push_back({h_label(n, "f"), n, homology_subquotient(cone, n)});
    arrows.push_back({"k", [x_rank](const QVector& v) { return head(v, x_rank); }});
    stages.push_back({h_label(n - 1, "X"), n - 1, homology_subquotient(X, n - 1)});
    arrows.push_back({"f", [f_low](const QVector& theta) { return f_low * theta; }});
  }
  arrows.pop_back();
  return assemble(stages, arrows);
}

namespace {

bool degreewise_injective(const ComplexMap& f) {
  for (const auto& [n, r] : f.src().ranks()) {
    (void)r;
    QMatrix m = f.at(n);
    if (rank(clear_denominators(m)) != m.cols()) return false;
  }
  return true;
}

bool degreewise_surjective(const ComplexMap& f, bool field) {
  for (const auto& [n, r] : f.dst().ranks()) {
    (void)r;
    QMatrix m = f.at(n);
    if (field) {
      if (rank(clear_denominators(m)) != m.rows()) return false;
    } else {
      SNFResult s = snf(to_integer(m));
      if (s.rank != m.rows()) return false;
      for (std::size_t i = 0; i < s.rank; ++i)
        if (s.D(i, i) != 1) return false;
    }
  }
  return true;
}

QVector solve_exact(const QMatrix& a, const QVector& b, bool field) {
  if (field) {
    // (L a) x' = b gives a (L x') = b.
    Integer l = 1;
    for (std::size_t i = 0; i < a.rows(); ++i) l = lcm(l, denominator_lcm(a.row(i)));
    auto x = solve_rational(to_integer(Rational(l) * a), b);
    if (!x) throw std::logic_error("connecting map: no preimage");
    for (auto& v : *x) v *= Rational(l);
    return *x;
  }
  auto x = solve_integer(to_integer(a), to_integer(b));
  if (!x) throw std::logic_error("connecting map: no preimage");
  return to_rational(*x);
}

}  // namespace

KerCokerReport ker_coker_les(const ComplexMap& f) {
  if (!f.is_chain_map()) throw InvalidChainMap("ker_coker_les: not a chain map");
  const RingKind kind = f.src().ring().kind();
  if (kind != RingKind::Int && kind != RingKind::Rat) {
    throw UnsupportedRing("kernels and cokernels are formed over Z and Q only");
  }
  const bool field = kind == RingKind::Rat;
  const auto mode = field ? Subquotient::Mode::Field : Subquotient::Mode::Integral;
  const GradedComplex& X = f.src();
  const GradedComplex& Y = f.dst();

  auto integral = [&](const QMatrix& m) { return field ? clear_denominators(m) : to_integer(m); };

  // H_m(ker f) inside X_m.
  auto ker_stage = [&](int m) {
    ZMatrix cycles = kernel_basis(integral(vstack(X.diff(m), f.at(m))));
    QMatrix bounds = X.diff(m + 1) * to_rational(kernel_basis(integral(f.at(m + 1))));
    return Stage{h_label(m, "ker f"), m, Subquotient(std::move(cycles), bounds, mode)};
  };
  // H_n(coker f) inside Y_n.
  auto coker_stage = [&](int n) {
    ZMatrix kb = kernel_basis(integral(hstack(Y.diff(n), -f.at(n - 1))));
    ZMatrix cycles = lattice_basis(kb.block(0, 0, Y.rank(n), kb.cols()));
    QMatrix bounds = hstack(Y.diff(n + 1), f.at(n));
    return Stage{h_label(n, "coker f"), n, Subquotient(std::move(cycles), bounds, mode)};
  };

  KerCokerReport report;
  auto span = cone_span(f);
  if (!span) return report;
  GradedComplex cone = cone_of_map(f);

  std::vector<Stage> stages;
  std::vector<Arrow> arrows;
  for (int n = span->hi; n >= span->lo; --n) {
    const std::size_t x_rank = X.rank(n - 1);
    const std::size_t y_rank = Y.rank(n);
    const QMatrix f_low = f.at(n - 1);
    const QMatrix dy = Y.diff(n);
    const QMatrix dx = X.diff(n - 1);
    stages.push_back(ker_stage(n - 1));
    arrows.push_back({"j", [y_rank](const QVector& theta) { return concat(theta, QVector(y_rank, 0)); }});
    stages.push_back({h_label(n, "f"), n, homology_subquotient(cone, n)});
    arrows.push_back({"k", [x_rank](const QVector& v) { return tail(v, x_rank); }});
    stages.push_back(coker_stage(n));
    arrows.push_back({"delta", [=](const QVector& eta) { return dx * solve_exact(f_low, dy * eta, field); }});
  }
  arrows.pop_back();
  report.les = assemble(stages, arrows);

  report.injective = degreewise_injective(f);
  report.surjective = degreewise_surjective(f, field);
  // Stages come in triples (ker_{n-1}, f_n, coker_n).
  for (std::size_t i = 0; i + 2 < report.les.terms.size(); i += 3) {
    const AbGroup& k = report.les.terms[i].group;
    const AbGroup& h = report.les.terms[i + 1].group;
    const AbGroup& q = report.les.terms[i + 2].group;
    if (report.injective && !isomorphic(h, q)) report.specialization_holds = false;
    if (report.surjective && !isomorphic(h, k)) report.specialization_holds = false;
  }
  return report;
}

bool quasi_iso(const ComplexMap& f) {
  GradedComplex cone = cone_of_map(f);
  for (const auto& [n, g] : homology_all(cone))
    if (!g.is_trivial()) return false;
  return true;
}

FiveLemmaReport five_lemma_transfer(const ComplexMap& phi, const ComplexMap& psi, const ComplexMap& f,
                                    const ComplexMap& f_tilde) {
  FiveLemmaReport r;
  r.cone_map = cone_map_of_square(phi, psi, f, f_tilde);
  r.phi_quasi_iso = quasi_iso(phi);
  r.psi_quasi_iso = quasi_iso(psi);
  r.cone_map_quasi_iso = quasi_iso(r.cone_map);
  return r;
}

}  // namespace relcone
