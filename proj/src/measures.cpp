#include "dircorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dircorr/do_calculus.hpp"
#include "dircorr/error.hpp"
#include "dircorr/removal.hpp"

namespace dircorr {

const std::vector<MeasureInfo>& all_measures() {
  static const std::vector<MeasureInfo> table = {
      {Measure::pcc, "pcc", Range::Signed, false, false, false, true, "Pearson correlation of X and Y"},
      {Measure::pc, "pc", Range::Signed, true, false, false, true, "partial correlation of X and Y given Z"},
      {Measure::mi, "mi", Range::Bits, false, false, false, false, "mutual information H(X:Y)"},
      {Measure::nmi_to_y, "nmi_to_y", Range::Unit, false, false, false, false, "H(X:Y)/H(Y)"},
      {Measure::nmi_to_x, "nmi_to_x", Range::Unit, false, false, false, false, "H(X:Y)/H(X)"},
      {Measure::nmi, "nmi", Range::Unit, false, false, false, false, "max of the two normalized MIs"},
      {Measure::rmi, "rmi", Range::Unit, false, true, false, false, "regularized mutual information"},
      {Measure::cmi, "cmi", Range::Bits, true, false, false, false, "conditional mutual information"},
      {Measure::cmi_js, "cmi_js", Range::Unit, true, false, false, false, "JS divergence of p from p(x|z)p(y|z)p(z)"},
      {Measure::rcmi, "rcmi", Range::Unit, true, true, false, false, "regularized CMI"},
      {Measure::pmi, "pmi", Range::Bits, true, false, false, false, "partial mutual information"},
      {Measure::rpmi, "rpmi", Range::Unit, true, true, false, false, "regularized PMI"},
      {Measure::icmi_xy, "icmi_xy", Range::Bits, true, false, false, false, "one-way ICMI X->Y"},
      {Measure::icmi_yx, "icmi_yx", Range::Bits, true, false, false, false, "one-way ICMI Y->X"},
      {Measure::icmi_two, "icmi_two", Range::Bits, true, false, false, false, "two-way ICMI"},
      {Measure::ricmi_xy, "ricmi_xy", Range::Unit, true, true, false, false, "regularized one-way ICMI X->Y"},
      {Measure::ricmi_yx, "ricmi_yx", Range::Unit, true, true, false, false, "regularized one-way ICMI Y->X"},
      {Measure::ricmi_two, "ricmi_two", Range::Unit, true, true, false, false, "regularized two-way ICMI"},
      {Measure::ace, "ace", Range::Unit, true, false, true, false, "average causal effect"},
      {Measure::nace, "nace", Range::Unit, true, true, true, false, "normalized average causal effect"},
      {Measure::ace_kl, "ace_kl", Range::Bits, true, false, true, false, "max KL between do-rows"},
      {Measure::race, "race", Range::Unit, true, true, true, false, "regularized average causal effect"},
      {Measure::mi_do, "mi_do", Range::Unit, true, false, true, false, "normalized MI of p_do toward Y"},
      {Measure::rmi_do, "rmi_do", Range::Unit, true, true, true, false, "regularized MI of p_do"},
  };
  return table;
}

const MeasureInfo& info(Measure m) {
  const auto& t = all_measures();
  return t[static_cast<std::size_t>(m)];
}

std::string_view to_string(Measure m) { return info(m).name; }

std::optional<Measure> parse_measure(std::string_view name) {
  for (const auto& i : all_measures())
    if (i.name == name) return i.id;
  return std::nullopt;
}

std::string valid_measure_names() {
  std::string out;
  for (const auto& i : all_measures()) {
    if (!out.empty()) out += ", ";
    out += i.name;
  }
  return out;
}

std::vector<Measure> parse_measure_list(std::string_view text) {
  std::vector<Measure> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    std::string_view tok = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty()) {
      if (tok == "all") {
        for (const auto& i : all_measures()) out.push_back(i.id);
      } else if (auto m = parse_measure(tok)) {
        out.push_back(*m);
      } else {
        throw Error(ErrorKind::InvalidArgument,
                    "unknown measure '" + std::string(tok) + "'; valid ids: " + valid_measure_names());
      }
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty measure list");
  return out;
}

std::vector<Measure> boundable_measures() {
  std::vector<Measure> out;
  for (const auto& i : all_measures())
    if (i.boundable) out.push_back(i.id);
  return out;
}

namespace {

// Lazily computed intermediates shared across a batch of measures.
class Evaluator {
 public:
  Evaluator(const Joint3& j, const EvalOptions& opts) : j_(j), opts_(opts) {}

  double value(Measure m) {
    switch (m) {
      case Measure::pcc: return dircorr::pcc(marginal(j_, Axis::X, Axis::Y), enc().x, enc().y);
      case Measure::pc: return partial_correlation(j_, enc());
      case Measure::mi: return mutual_information(pxy());
      case Measure::nmi_to_y: return normalized_mi(pxy()).to_y;
      case Measure::nmi_to_x: return normalized_mi(pxy()).to_x;
      case Measure::nmi: return normalized_mi(pxy()).max;
      case Measure::rmi: return regularized_mi(pxy());
      case Measure::cmi: return dircorr::cmi(j_);
      case Measure::cmi_js: return js_divergence(j_, qcmi());
      case Measure::rcmi: return std::sqrt(js_divergence(j_, qcmi()));
      case Measure::pmi: return kl_divergence(j_, qpmi());
      case Measure::rpmi: return std::sqrt(js_divergence(j_, qpmi()));
      case Measure::icmi_xy: return kl_divergence(icmi_f().p1, icmi_f().p2);
      case Measure::icmi_yx: return kl_divergence(icmi_b().p1, icmi_b().p2);
      case Measure::icmi_two: return 0.5 * (value(Measure::icmi_xy) + value(Measure::icmi_yx));
      case Measure::ricmi_xy: return std::sqrt(js_divergence(icmi_f().p1, icmi_f().p2));
      case Measure::ricmi_yx: return std::sqrt(js_divergence(icmi_b().p1, icmi_b().p2));
      case Measure::ricmi_two: return 0.5 * (value(Measure::ricmi_xy) + value(Measure::ricmi_yx));
      case Measure::ace: return dircorr::ace(dc());
      case Measure::nace: return dircorr::nace(dc());
      case Measure::ace_kl: return dircorr::ace_kl(dc());
      case Measure::race: return dircorr::race(dc());
      case Measure::mi_do: return dircorr::mi_do(dj());
      case Measure::rmi_do: return dircorr::rmi_do(dj());
    }
    throw Error(ErrorKind::InvalidArgument, "unhandled measure");
  }

 private:
  const Encodings& enc() {
    if (opts_.encodings) return *opts_.encodings;
    if (!ordinal_) ordinal_ = Encodings::ordinal(j_);
    return *ordinal_;
  }
  const Joint2& pxy() {
    if (!pxy_) pxy_ = marginal(j_, Axis::X, Axis::Y);
    return *pxy_;
  }
  const Joint3& qcmi() {
    if (!qcmi_) qcmi_ = reconstruct_q_cmi(j_);
    return *qcmi_;
  }
  const Joint3& qpmi() {
    if (!qpmi_) qpmi_ = reconstruct_q_pmi(j_, opts_.strategy).q;
    return *qpmi_;
  }
  const IcmiPair& icmi_f() {
    if (!icmi_f_) icmi_f_ = icmi_reconstruction(j_, Direction::XtoY, opts_.strategy);
    return *icmi_f_;
  }
  const IcmiPair& icmi_b() {
    if (!icmi_b_) icmi_b_ = icmi_reconstruction(j_, Direction::YtoX, opts_.strategy);
    return *icmi_b_;
  }
  const DoConditional& dc() {
    if (!dc_) dc_ = do_conditional(j_, opts_.strategy);
    return *dc_;
  }
  const DoJoint& dj() {
    if (!dj_) dj_ = do_joint(j_, dc());
    return *dj_;
  }

  const Joint3& j_;
  const EvalOptions& opts_;
  std::optional<Encodings> ordinal_;
  std::optional<Joint2> pxy_;
  std::optional<Joint3> qcmi_;
  std::optional<Joint3> qpmi_;
  std::optional<IcmiPair> icmi_f_;
  std::optional<IcmiPair> icmi_b_;
  std::optional<DoConditional> dc_;
  std::optional<DoJoint> dj_;
};

}  // namespace

double evaluate(Measure m, const Joint3& j, const EvalOptions& opts) {
  Evaluator ev(j, opts);
  return ev.value(m);
}

MeasureValues evaluate_all(std::span<const Measure> ms, const Joint3& j, const EvalOptions& opts) {
  Evaluator ev(j, opts);
  MeasureValues out;
  for (Measure m : ms) {
    out.measures.push_back(m);
    try {
      out.values.push_back(ev.value(m));
      out.errors.emplace_back();
    } catch (const Error& e) {
      out.values.push_back(std::numeric_limits<double>::quiet_NaN());
      out.errors.emplace_back(e.what());
    }
  }
  return out;
}

}  // namespace dircorr
