#include "lsg/replab.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lsg/matrix_json.hpp"

namespace lsg {

// ---------------------------------------------------------------------------
// ApproxRep

void ApproxRep::set(const std::string& name, CMatrix image, bool check_unitary) {
  if (image.rows() != dim_ || image.cols() != dim_) {
    throw ValidationError("image of " + name + " has the wrong shape");
  }
  if (check_unitary && unitarity_defect(image) > kUnitaryTol) throw ValidationError("image of " + name + " is not unitary");
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (names_[k] == name) {
      images_[k] = std::move(image);
      return;
    }
  }
  names_.push_back(name);
  images_.push_back(std::move(image));
}

bool ApproxRep::has(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

const CMatrix& ApproxRep::at(const std::string& name) const {
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (names_[k] == name) return images_[k];
  }
  throw ValidationError("representation does not assign " + name);
}

std::vector<CMatrix> align(const ApproxRep& rep, const Presentation& pres) {
  std::vector<CMatrix> out;
  out.reserve(pres.generator_count());
  for (GenId g = 0; g < pres.generator_count(); ++g) {
    const auto& name = pres.name(g);
    if (rep.has(name)) {
      out.push_back(rep.at(name));
    } else if (pres.j() == g) {
      out.push_back(-CMatrix::Identity(rep.dim(), rep.dim()));
    } else {
      throw ValidationError("representation does not assign " + name);
    }
  }
  return out;
}

CMatrix evaluate(const std::vector<CMatrix>& images, const GroupWord& w) {
  if (images.empty()) throw ValidationError("evaluate: no images");
  const auto d = images.front().rows();
  if (w.empty()) return CMatrix::Identity(d, d);
  for (const auto& l : w.letters) {
    if (l.gen >= images.size()) throw ValidationError("evaluate: unassigned generator");
  }
  auto image = [&](const Letter& l) -> CMatrix { return l.exp > 0 ? images[l.gen] : images[l.gen].adjoint(); };
  CMatrix out = image(w.letters.front());
  for (std::size_t k = 1; k < w.size(); ++k) {
    const auto& l = w.letters[k];
    if (l.exp > 0) {
      out = out * images[l.gen];
    } else {
      out = out * images[l.gen].adjoint();
    }
  }
  return out;
}

CMatrix evaluate(const ApproxRep& rep, const Presentation& pres, const GroupWord& w) {
  return evaluate(align(rep, pres), w);
}

double defect_epsilon(const std::vector<CMatrix>& images, const Presentation& pres) {
  double eps = 0.0;
  for (const auto& r : pres.relations()) eps = std::max(eps, identity_defect(evaluate(images, r.word)));
  return eps;
}

DefectReport defect(const ApproxRep& rep, const Presentation& pres) {
  const auto images = align(rep, pres);
  DefectReport out;
  for (const auto& r : pres.relations()) {
    const auto d = identity_defect(evaluate(images, r.word));
    out.relations.push_back(to_string(r.word, pres));
    out.defects.push_back(d);
    out.epsilon = std::max(out.epsilon, d);
  }
  return out;
}

std::string DefectReport::to_json() const {
  nlohmann::json j;
  j["epsilon"] = epsilon;
  auto& rel = j["relations"] = nlohmann::json::array();
  for (std::size_t k = 0; k < relations.size(); ++k) rel.push_back({{"relation", relations[k]}, {"defect", defects[k]}});
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Stability

CMatrix round_commuting(const std::vector<CMatrix>& xs, const CMatrix& y) {
  if (xs.empty()) throw ValidationError("round_commuting: needs at least one X");
  const auto d = y.rows();
  for (const auto& x : xs) {
    if (x.rows() != d || x.cols() != d) throw ValidationError("round_commuting: dimension mismatch");
    if (involution_defect(x) > kExactTol) throw ValidationError("round_commuting: X is not an involution");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (commutator_norm(xs[i], xs[j]) > kExactTol) throw ValidationError("round_commuting: X's do not commute");
    }
  }
  if (involution_defect(y) > kExactTol) throw ValidationError("round_commuting: Y is not an involution");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (commutator_norm(xs[i], y) > kExactTol) throw ValidationError("round_commuting: Y must commute with X_1..X_{n-1}");
  }

  const auto& xn = xs.back();
  const CMatrix z0 = (y + xn * y * xn) / 2.0;
  CMatrix z = CMatrix::Zero(d, d);
  for (const auto& q : joint_eigenspaces(xs, d)) {
    const auto eig = hermitian_eigen(q.adjoint() * z0 * q);
    Eigen::VectorXcd signs(eig.values.size());
    for (Eigen::Index i = 0; i < signs.size(); ++i) signs(i) = sgn(eig.values(i));
    const CMatrix basis = q * eig.vectors;
    z += basis * signs.asDiagonal() * basis.adjoint();
  }
  return z;
}

double abelian_constant(std::size_t k) {
  if (k == 0) return 0.0;
  const double c0 = kCommutingConstant;
  const double c1 = kInvolutionConstant;
  return 0.25 * (std::pow(4 * c0 + 1, static_cast<double>(k) - 1) - 1) * (4 * c1 + 1) + c1;
}

double abelian_constant_as_printed(std::size_t k) {
  const double c0 = kCommutingConstant;
  const double c1 = kInvolutionConstant;
  return 0.25 * (std::pow(4 * c0 + 1, static_cast<double>(k) - 2) - 1) * (4 * c1 + 1) + c1;
}

Presentation z2k_presentation(std::size_t k) {
  Presentation p;
  std::vector<GenId> x;
  for (const auto& name : default_names("x", k)) x.push_back(p.add_generator(name, true));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      p.add_relation(commutator(GroupWord::gen(x[i]), GroupWord::gen(x[j])), RelationKind::Commutation);
    }
  }
  return p;
}

AbelianRounding stabilize_abelian(const std::vector<CMatrix>& images) {
  const auto k = images.size();
  AbelianRounding out;
  out.constant = abelian_constant(k);
  if (k == 0) return out;
  const auto d = images.front().rows();
  for (const auto& m : images) {
    if (m.rows() != d || m.cols() != d) throw ValidationError("stabilize_abelian: dimension mismatch");
  }
  out.input_epsilon = defect_epsilon(images, z2k_presentation(k));

  std::vector<CMatrix> psi;
  psi.reserve(k);
  for (const auto& m : images) psi.push_back(nearest_involution(m));
  // After step l, psi[0..l] commute with everything.
  for (std::size_t l = 0; l + 1 < k; ++l) {
    const std::vector<CMatrix> xs(psi.begin(), psi.begin() + static_cast<std::ptrdiff_t>(l + 1));
    for (std::size_t j = l + 1; j < k; ++j) psi[j] = round_commuting(xs, psi[j]);
  }
  out.images = std::move(psi);
  return out;
}

JSplit split_on_j(const ApproxRep& rep, const Presentation& pres, double delta) {
  if (delta <= 0) throw ValidationError("split_on_j: delta must be positive");
  const auto jid = pres.require_j();
  for (GenId g = 0; g < pres.generator_count(); ++g) {
    if (!pres.involutary(g)) throw ValidationError("split_on_j: generator " + pres.name(g) + " is not involutary");
  }
  auto psi = align(rep, pres);
  const auto d = rep.dim();
  if (identity_defect(psi[jid]) <= delta) throw ValidationError("split_on_j: ||phi(J) - I|| <= delta");

  for (auto& m : psi) m = nearest_involution(m);
  for (GenId g = 0; g < pres.generator_count(); ++g) {
    if (g != jid) psi[g] = round_commuting({psi[jid]}, psi[g]);
  }
  JSplit out;
  out.rounded_epsilon = defect_epsilon(psi, pres);
  if (identity_defect(psi[jid]) <= delta / 2) {
    throw ValidationError("split_on_j: rounded J is within delta/2 of I; the input defect is too large for this delta");
  }

  CMatrix basis;
  if (identity_defect((-psi[jid]).eval()) <= 1e-12) {
    basis = CMatrix::Identity(d, d);
  } else if (is_diagonal(psi[jid], 1e-12)) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (psi[jid](i, i).real() < 0) cols.push_back(i);
    }
    basis = CMatrix::Zero(d, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) basis(cols[c], static_cast<Eigen::Index>(c)) = 1.0;
  } else {
    const auto eig = hermitian_eigen(psi[jid]);
    Eigen::Index neg = 0;
    while (neg < eig.values.size() && eig.values(neg) < 0) ++neg;
    basis = eig.vectors.leftCols(neg);
  }
  const auto d1 = basis.cols();
  if (d1 == 0) throw ValidationError("split_on_j: J has no -1 eigenspace");

  ApproxRep block(d1);
  for (GenId g = 0; g < pres.generator_count(); ++g) {
    if (g == jid) {
      block.set(pres.name(g), -CMatrix::Identity(d1, d1));
    } else {
      block.set(pres.name(g), nearest_unitary(basis.adjoint() * psi[g] * basis));
    }
  }
  out.epsilon = defect(block, pres).epsilon;
  out.certified = 4.0 * out.rounded_epsilon / delta;
  out.rep = std::move(block);
  return out;
}

// ---------------------------------------------------------------------------
// Constructions

namespace {

void require_same_generators(const ApproxRep& a, const ApproxRep& b) {
  if (a.size() != b.size()) throw ValidationError("representations assign different generators");
  for (const auto& n : a.names()) {
    if (!b.has(n)) throw ValidationError("representations assign different generators");
  }
}

}  // namespace

ApproxRep direct_sum(const ApproxRep& a, const ApproxRep& b) {
  require_same_generators(a, b);
  ApproxRep out(a.dim() + b.dim());
  for (std::size_t k = 0; k < a.size(); ++k) out.set(a.names()[k], block_diag(a.image(k), b.at(a.names()[k])));
  return out;
}

ApproxRep tensor(const ApproxRep& a, const ApproxRep& b) {
  require_same_generators(a, b);
  ApproxRep out(a.dim() * b.dim());
  for (std::size_t k = 0; k < a.size(); ++k) out.set(a.names()[k], kron(a.image(k), b.at(a.names()[k])), false);
  return out;
}

ApproxRep trivial_rep(const std::vector<std::string>& names, Eigen::Index dim) {
  ApproxRep out(dim);
  for (const auto& n : names) out.set(n, CMatrix::Identity(dim, dim));
  return out;
}

ApproxRep conjugated(const ApproxRep& rep, const CMatrix& u) {
  ApproxRep out(rep.dim());
  for (std::size_t k = 0; k < rep.size(); ++k) out.set(rep.names()[k], u * rep.image(k) * u.adjoint());
  return out;
}

unsigned tensor_power_exponent(double delta, double eps) {
  if (delta <= 0 || eps <= 0) throw ValidationError("tensor_power_exponent: delta and eps must be positive");
  const double base = 1.0 - delta * delta / 4.0;
  const double target = eps * eps / 4.0;
  if (base <= 0 || target >= 1) return 1;
  const auto k = static_cast<unsigned>(std::ceil(std::log(target) / std::log(base) - 1e-12));
  return std::max(1U, k);
}

double normalized_trace(const CMatrix& x) { return x.trace().real() / static_cast<double>(x.rows()); }

Amplified amplify(const ApproxRep& rep, const Presentation& g, const std::string& a, double delta, double eps,
                  Eigen::Index cap, const std::string& z_name) {
  if (g.over_z2()) throw ValidationError("amplify: G must not be presented over Z2");
  if (delta <= 0) throw ValidationError("amplify: delta must be positive");
  const auto aid = g.id(a);
  if (!g.involutary(aid)) throw ValidationError("amplify: " + a + " is not involutary");
  const auto& phi_a = rep.at(a);
  if (involution_defect(phi_a) > kExactTol) throw ValidationError("amplify: image of " + a + " must be an involution");
  if (identity_defect(phi_a) <= delta) throw ValidationError("amplify: ||phi(a) - I|| <= delta");

  Amplified out;
  out.k = tensor_power_exponent(delta, eps);
  const auto d = rep.dim();
  double dim = 1;
  for (unsigned r = 0; r < out.k; ++r) dim *= static_cast<double>(2 * d);
  if (dim > static_cast<double>(cap)) {
    throw FeasibilityError("amplify: tensor power needs dimension " + std::to_string(static_cast<long long>(dim)) +
                           ", above the cap " + std::to_string(cap));
  }
  out.input_epsilon = defect(rep, g).epsilon;

  // Pad with a trivial summand and diagonalize a in the padded factor.
  const auto images = align(rep, g);
  ApproxRep padded = direct_sum(trivial_rep(g.names(), d), [&] {
    ApproxRep r(d);
    for (GenId s = 0; s < g.generator_count(); ++s) r.set(g.name(s), images[s]);
    return r;
  }());
  const auto eig = hermitian_eigen(padded.at(a));
  padded = conjugated(padded, eig.vectors.adjoint());
  std::vector<int> base_signs(static_cast<std::size_t>(2 * d));
  for (Eigen::Index i = 0; i < 2 * d; ++i) base_signs[static_cast<std::size_t>(i)] = padded.at(a)(i, i).real() < 0 ? -1 : 1;

  ApproxRep power = padded;
  std::vector<int> signs = base_signs;
  for (unsigned r = 1; r < out.k; ++r) {
    power = tensor(power, padded);
    std::vector<int> next;
    next.reserve(signs.size() * base_signs.size());
    for (auto s : signs) {
      for (auto b : base_signs) next.push_back(s * b);
    }
    signs = std::move(next);
  }

  // Reorder so that a = I_{d0} + (-I_{d0}) + I_{d1}.
  std::vector<Eigen::Index> plus, minus;
  for (std::size_t i = 0; i < signs.size(); ++i) (signs[i] > 0 ? plus : minus).push_back(static_cast<Eigen::Index>(i));
  const auto d0 = static_cast<Eigen::Index>(minus.size());
  const auto d1 = static_cast<Eigen::Index>(plus.size()) - d0;
  std::vector<Eigen::Index> order(plus.begin(), plus.begin() + d0);
  order.insert(order.end(), minus.begin(), minus.end());
  order.insert(order.end(), plus.begin() + d0, plus.end());

  const auto n = power.dim();
  out.trace = static_cast<double>(d1) / static_cast<double>(n);
  ApproxRep result(n);
  for (std::size_t k = 0; k < power.size(); ++k) {
    result.set(power.names()[k], power.image(k)(order, order), false);
  }
  CMatrix t = CMatrix::Zero(n, n);
  t.block(0, d0, d0, d0).setIdentity();
  t.block(d0, 0, d0, d0).setIdentity();
  t.bottomRightCorner(d1, d1).setIdentity();
  result.set("t", t, false);
  result.set("J", -CMatrix::Identity(n, n), false);
  if (!z_name.empty()) result.set(z_name, -result.at(a), false);

  // <G, t : t^2, t a t = J a>_Z2.
  Presentation hat;
  for (GenId s = 0; s < g.generator_count(); ++s) hat.add_generator(g.name(s), g.involutary(s));
  for (const auto& r : g.relations()) {
    const bool auto_square = r.kind == RelationKind::Involution && r.word.size() == 2 && g.involutary(r.word.letters[0].gen);
    if (!auto_square) hat.add_relation(r.word, r.kind);
  }
  const auto tid = hat.add_generator("t", true);
  hat.close_over_z2();
  const auto jid = hat.require_j();
  hat.add_relation(GroupWord{{tid, 1}, {aid, 1}, {tid, 1}, {aid, -1}, {jid, -1}}, RelationKind::Other);
  if (!z_name.empty()) {
    const auto zid = hat.add_generator(z_name, true);
    hat.add_relation(GroupWord{{zid, 1}, {aid, -1}, {jid, -1}}, RelationKind::Linear);
  }
  out.epsilon = defect(result, hat).epsilon;
  out.certified = std::max(out.input_epsilon * out.k, 2.0 * std::sqrt(std::max(0.0, out.trace)));
  out.rep = std::move(result);
  out.hat = std::move(hat);
  return out;
}

ApproxRep extend_internalization(const ApproxRep& rep, const Internalization& in) {
  const auto& ext = in.extended;
  std::vector<CMatrix> images(ext.generator_count());
  std::vector<bool> known(ext.generator_count(), false);
  for (GenId g = 0; g < ext.generator_count(); ++g) {
    if (rep.has(ext.name(g))) {
      images[g] = rep.at(ext.name(g));
      known[g] = true;
    }
  }
  ApproxRep out = rep;
  for (std::size_t k = 0; k < in.ancillas.size(); ++k) {
    for (const auto& l : in.definitions[k].letters) {
      if (!known[l.gen]) throw ValidationError("extend_internalization: " + ext.name(l.gen) + " is unassigned");
    }
    const auto g = in.ancillas[k];
    images[g] = evaluate(images, in.definitions[k]);
    known[g] = true;
    out.set(ext.name(g), images[g]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixed representations and sampling

BinaryLinearSystem magic_square_system() {
  return BinaryLinearSystem::from_supports(
      9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8}}, {0, 0, 0, 0, 0, 1});
}

ApproxRep pauli_magic_rep() {
  const Complex i(0, 1);
  CMatrix id = CMatrix::Identity(2, 2);
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  const CMatrix grid[9] = {kron(x, id), kron(id, x), kron(x, x), kron(id, z), kron(z, id),
                           kron(z, z),  kron(x, z),  kron(z, x), kron(y, y)};
  ApproxRep rep(4);
  const auto names = default_names("x", 9);
  for (std::size_t k = 0; k < 9; ++k) rep.set(names[k], grid[k]);
  rep.set("J", -CMatrix::Identity(4, 4));
  return rep;
}

CMatrix random_unitary(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix g(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) g(r, c) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases so the distribution is Haar.
  for (Eigen::Index c = 0; c < d; ++c) {
    const auto diag = rr(c, c);
    if (std::abs(diag) > 0) q.col(c) *= diag / std::abs(diag);
  }
  return q;
}

CMatrix random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix g(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) g(r, c) = Complex(normal(rng), normal(rng));
  }
  CMatrix h = (g + g.adjoint()) / 2.0;
  return h / hs_norm(h);
}

CMatrix expi(const CMatrix& h, double s) {
  const auto eig = hermitian_eigen(h);
  Eigen::VectorXcd phases(eig.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(Complex(0, s * eig.values(k)));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

CMatrix perturb(const CMatrix& u, double scale, std::mt19937_64& rng) {
  return u * expi(random_hermitian(u.rows(), rng), scale);
}

ApproxRep perturb(const ApproxRep& rep, double scale, std::mt19937_64& rng) {
  ApproxRep out(rep.dim());
  for (std::size_t k = 0; k < rep.size(); ++k) out.set(rep.names()[k], perturb(rep.image(k), scale, rng));
  return out;
}

ApproxRep random_exact_rep(const LinearPlusConjugacy& g, Eigen::Index blocks, std::mt19937_64& rng) {
  const auto n = g.sys.cols();
  // One-dimensional sign representations: x_j -> (-1)^{s_j}, J -> (-1)^beta.
  std::vector<std::vector<int>> valid;
  if (n <= 16) {
    for (std::uint32_t code = 0; code < (std::uint32_t{1} << (n + 1)); ++code) {
      const int beta = static_cast<int>(code >> n) & 1;
      bool ok = true;
      for (std::size_t i = 0; i < g.sys.rows() && ok; ++i) {
        int parity = g.sys.rhs(i) ? beta : 0;
        for (auto j : g.sys.row(i).ones()) parity ^= static_cast<int>((code >> j) & 1U);
        ok = parity == 0;
      }
      for (const auto& t : g.triples) {
        if (!ok) break;
        ok = ((code >> t.j) & 1U) == ((code >> t.k) & 1U);
      }
      if (!ok) continue;
      std::vector<int> s(n + 1);
      for (std::size_t j = 0; j <= n; ++j) s[j] = static_cast<int>((code >> j) & 1U);
      valid.push_back(std::move(s));
    }
  }
  if (valid.empty()) valid.emplace_back(n + 1, 0);
  std::uniform_int_distribution<std::size_t> pick(0, valid.size() - 1);
  std::vector<Eigen::VectorXcd> diag(n + 1, Eigen::VectorXcd(blocks));
  for (Eigen::Index b = 0; b < blocks; ++b) {
    const auto& s = valid[pick(rng)];
    for (std::size_t j = 0; j <= n; ++j) diag[j](b) = s[j] ? -1.0 : 1.0;
  }
  const auto u = random_unitary(blocks, rng);
  ApproxRep rep(blocks);
  for (std::size_t j = 0; j < n; ++j) rep.set(g.names[j], u * diag[j].asDiagonal() * u.adjoint());
  rep.set("J", u * diag[n].asDiagonal() * u.adjoint());
  return rep;
}

std::vector<CMatrix> random_commuting_involutions(std::size_t k, Eigen::Index d, std::mt19937_64& rng) {
  std::bernoulli_distribution coin;
  const auto u = random_unitary(d, rng);
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < k; ++i) {
    Eigen::VectorXcd s(d);
    for (Eigen::Index r = 0; r < d; ++r) s(r) = coin(rng) ? -1.0 : 1.0;
    out.push_back(u * s.asDiagonal() * u.adjoint());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Files

nlohmann::json matrix_to_json(const CMatrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const nlohmann::json& rows, Eigen::Index d, const std::string& what) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d) {
    throw ValidationError(what + " has the wrong row count");
  }
  CMatrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const auto& row = rows.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) throw ValidationError(what + " has a ragged row");
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto& entry = row.at(static_cast<std::size_t>(c));
      m(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

ApproxRep read_rep_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("rep json: ") + e.what());
  }
  try {
    const auto d = j.at("dimension").get<Eigen::Index>();
    if (d <= 0) throw ValidationError("rep json: dimension must be positive");
    ApproxRep rep(d);
    const auto names = j.at("generators").get<std::vector<std::string>>();
    const auto& images = j.at("images");
    for (const auto& name : names) rep.set(name, matrix_from_json(images.at(name), d, name));
    return rep;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("rep json: ") + e.what());
  }
}

std::string rep_json(const ApproxRep& rep) {
  nlohmann::json j;
  j["dimension"] = rep.dim();
  j["generators"] = rep.names();
  auto& images = j["images"] = nlohmann::json::object();
  for (std::size_t k = 0; k < rep.size(); ++k) images[rep.names()[k]] = matrix_to_json(rep.image(k));
  return j.dump();
}

ApproxRep load_rep(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return read_rep_json(ss.str());
}

void save_rep(const std::string& path, const ApproxRep& rep) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << rep_json(rep) << '\n';
}

}  // namespace lsg
