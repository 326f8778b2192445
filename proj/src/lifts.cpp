#include "lsg/replab.hpp"

namespace lsg {

namespace {

CMatrix j_image(const ApproxRep& phi) {
  if (phi.has("J")) return phi.at("J");
  return -CMatrix::Identity(phi.dim(), phi.dim());
}

std::vector<CMatrix> variable_images(const std::vector<std::string>& names, const ApproxRep& phi) {
  std::vector<CMatrix> out;
  out.reserve(names.size());
  for (const auto& name : names) out.push_back(phi.at(name));
  return out;
}

}  // namespace

ApproxRep lift_nice(const LinearPlusConjugacy& g, const ApproxRep& phi) {
  const auto n = g.sys.cols();
  const auto d = phi.dim();
  const auto x = variable_images(g.names, phi);
  const CMatrix id = CMatrix::Identity(d, d);
  const auto nice = nice_embed(g);
  const auto& names = nice.group.names;

  ApproxRep out(2 * d);
  for (std::size_t j = 0; j < n; ++j) out.set(names[j], block_diag(x[j], x[j]), false);
  for (std::size_t j = 0; j < n; ++j) out.set(names[n + j], block_diag(x[j], id), false);
  for (std::size_t j = 0; j < n; ++j) out.set(names[2 * n + j], block_diag(id, x[j]), false);
  out.set(names[3 * n], swap_matrix(d), false);
  for (std::size_t j = 0; j < n; ++j) out.set(names[3 * n + 1 + j], antidiag(x[j], x[j]), false);
  for (std::size_t t = 0; t < g.triples.size(); ++t) {
    const auto& tr = g.triples[t];
    // (y_j z_k)^-1, so the new row holds exactly.
    out.set(names[4 * n + 1 + t], block_diag(x[tr.j].adjoint(), x[tr.k].adjoint()), false);
  }
  const auto j = j_image(phi);
  out.set("J", block_diag(j, j), false);
  return out;
}

ApproxRep lift_gadget(const LinearPlusConjugacy& nice, const ApproxRep& phi) {
  const auto n = nice.sys.cols();
  const auto d = phi.dim();
  const auto x = variable_images(nice.names, phi);
  const CMatrix id = CMatrix::Identity(d, d);
  const auto gad = gadgetize(nice);

  ApproxRep out(2 * d);
  for (std::size_t j = 0; j < n; ++j) out.set(gad.names[j], block_diag(x[j], x[j]), false);
  for (std::size_t t = 0; t < nice.triples.size(); ++t) {
    const auto& tr = nice.triples[t];
    const auto& xi = x[tr.i];
    const auto& xj = x[tr.j];
    const auto& xk = x[tr.k];
    const auto base = n + 7 * t;
    const CMatrix blocks[7] = {
        antidiag(xi, xi),
        swap_matrix(d),
        antidiag(xj, xj),
        antidiag(xj * xi, xi * xj),
        block_diag(xj * xi * xj, xi),
        block_diag(xj * xk, id),
        block_diag(xj, xk),
    };
    for (std::size_t s = 0; s < 7; ++s) out.set(gad.names[base + s], blocks[s], false);
  }
  const auto j = j_image(phi);
  out.set("J", block_diag(j, j), false);
  return out;
}

ApproxRep lift_compile(const LinearPlusConjugacy& g, const ApproxRep& phi) {
  return lift_gadget(nice_embed(g).group, lift_nice(g, phi));
}

ApproxRep lift_ehlpc(const ExtendedHomogeneous& g, const ApproxRep& phi) {
  const auto lowered = lower_ehlpc(g);
  const auto& names = lowered.group.names;
  std::vector<CMatrix> xs(names.size());
  for (std::size_t j = 0; j < g.names.size(); ++j) xs[j] = phi.at(g.names[j]);
  std::vector<CMatrix> ys;
  for (const auto& name : g.y_names) ys.push_back(phi.at(name));
  std::size_t assigned = g.names.size();

  auto word_value = [&](const GroupWord& w, Eigen::Index dim) {
    CMatrix m = CMatrix::Identity(dim, dim);
    for (const auto& l : w.letters) m = l.exp > 0 ? CMatrix(m * xs[l.gen]) : CMatrix(m * xs[l.gen].adjoint());
    return m;
  };

  Eigen::Index d = phi.dim();
  for (const auto& step : lowered.steps) {
    const CMatrix id = CMatrix::Identity(d, d);
    for (std::size_t v = 0; v < assigned; ++v) xs[v] = block_diag(xs[v], id);
    const CMatrix y = ys[step.source_y];
    for (std::size_t i = step.source_y + 1; i < ys.size(); ++i) ys[i] = block_diag(ys[i], ys[i]);
    xs[step.z] = swap_matrix(d);
    xs[step.w] = antidiag(y.adjoint(), y);
    d *= 2;
    for (const auto& a : step.ancillas) xs[a.var] = word_value(a.definition, d);
    assigned = step.first_var + 2 + step.ancillas.size();
  }

  ApproxRep out(d);
  for (std::size_t v = 0; v < names.size(); ++v) out.set(names[v], xs[v], false);
  return out;
}

}  // namespace lsg
