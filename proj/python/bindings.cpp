#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eggshell/commutator.hpp"
#include "eggshell/domain.hpp"
#include "eggshell/error.hpp"
#include "eggshell/gammakit.hpp"
#include "eggshell/io.hpp"
#include "eggshell/summability.hpp"
#include "eggshell/zetalab.hpp"

namespace py = pybind11;
using namespace eggshell;

namespace {

// Domains and zeta specs cross the boundary as their JSON text, e.g.
// '{"blocks":[{"p":[1,1],"a":1}]}'; commutators as "self:0:0" strings.
DomainSpec domain(const std::string& text) {
  return io::domain_from_json(io::load_json_argument(text));
}

zeta::ZetaSeriesSpec zspec(const std::string& text) {
  return io::zeta_from_json(io::load_json_argument(text));
}

SummationConfig config(double margin, double window, std::uint64_t cap, unsigned workers) {
  SummationConfig c;
  c.margin = margin;
  c.window_fraction = window;
  c.max_terms = cap;
  if (workers > 0) c.workers = workers;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Monomial norms, commutator eigenvalues and summability cut-offs on egg domains";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<BracketError>(m, "BracketError", PyExc_RuntimeError);

  m.def("log_gamma", &gammakit::log_gamma, py::arg("x"));
  m.def("log_multibeta",
        [](const std::vector<double>& xs) { return gammakit::log_multibeta(xs); }, py::arg("xs"));
  m.def(
      "expansion_value",
      [](const std::string& tag, double a, std::optional<double> b, double x, int order) {
        return gammakit::expansion_value(
            gammakit::ExpansionKind::make(gammakit::parse_expansion(tag), a, b), x, order);
      },
      py::arg("tag"), py::arg("a"), py::arg("b") = py::none(), py::arg("x"), py::arg("order"));
  m.def(
      "exact_ratio",
      [](const std::string& tag, double a, std::optional<double> b, double x) {
        return gammakit::exact_ratio(
            gammakit::ExpansionKind::make(gammakit::parse_expansion(tag), a, b), x);
      },
      py::arg("tag"), py::arg("a"), py::arg("b") = py::none(), py::arg("x"));

  m.def(
      "dimension", [](const std::string& dom) { return domain(dom).dimension(); },
      py::arg("domain"));
  m.def(
      "log_norm",
      [](const std::string& dom, std::vector<Index> idx) {
        const DomainSpec d = domain(dom);
        return log_norm(d, MultiIndex::from_flat(d, std::move(idx)));
      },
      py::arg("domain"), py::arg("index"));
  m.def(
      "mc_norm_oracle",
      [](const std::string& dom, std::vector<Index> idx, std::uint64_t samples,
         std::uint64_t seed) {
        const DomainSpec d = domain(dom);
        const auto r = mc_norm_oracle(d, MultiIndex::from_flat(d, std::move(idx)), samples, seed);
        return py::make_tuple(r.estimate, r.standard_error);
      },
      py::arg("domain"), py::arg("index"), py::arg("samples"), py::arg("seed") = 1);
  m.def(
      "eigenvalue",
      [](const std::string& dom, const std::string& kind, std::vector<Index> idx) {
        const DomainSpec d = domain(dom);
        return eigenvalue(d, parse_kind(kind), MultiIndex::from_flat(d, std::move(idx)));
      },
      py::arg("domain"), py::arg("kind"), py::arg("index"));

  m.def(
      "shell_sums",
      [](const std::string& dom, const std::string& kind, double p, Index N, double margin,
         double window, std::uint64_t cap, unsigned workers) {
        const SummationConfig c = config(margin, window, cap, workers);
        SummationReport r = shell_sums(domain(dom), parse_kind(kind), p, N, c);
        finalize(r, c);
        py::dict out;
        out["p"] = r.p;
        out["shell_sums"] = r.shell_sums;
        out["total"] = r.total;
        out["slope"] = r.slope;
        out["slope_stderr"] = r.slope_stderr;
        out["verdict"] = to_string(*r.verdict);
        return out;
      },
      py::arg("domain"), py::arg("kind"), py::arg("p"), py::arg("N"), py::arg("margin") = 0.15,
      py::arg("window") = 0.5, py::arg("cap") = 200'000'000, py::arg("workers") = 0);
  m.def(
      "empirical_threshold",
      [](const std::string& dom, const std::string& kind, double p_lo, double p_hi, double tol,
         Index N, unsigned workers) {
        return empirical_threshold(domain(dom), parse_kind(kind), p_lo, p_hi, tol, N,
                                   config(0.15, 0.5, 200'000'000, workers));
      },
      py::arg("domain"), py::arg("kind"), py::arg("p_lo"), py::arg("p_hi"), py::arg("tol") = 0.1,
      py::arg("N"), py::arg("workers") = 0);
  m.def(
      "predicted_threshold",
      [](const std::string& dom, const std::string& kind) {
        return predicted_threshold(domain(dom), parse_kind(kind));
      },
      py::arg("domain"), py::arg("kind"));
  m.def(
      "module_threshold",
      [](const std::string& dom) {
        const ModuleThreshold t = module_threshold(domain(dom));
        py::dict out;
        out["value"] = t.value;
        out["dimension"] = t.dimension;
        out["q"] = t.q;
        py::list breakdown;
        for (const auto& term : t.breakdown) breakdown.append(py::make_tuple(term.label, term.value));
        out["breakdown"] = breakdown;
        return out;
      },
      py::arg("domain"));
  m.def(
      "all_kinds",
      [](const std::string& dom) {
        std::vector<std::string> out;
        for (const auto& k : all_kinds(domain(dom))) out.push_back(to_string(k));
        return out;
      },
      py::arg("domain"));

  m.def(
      "critical_b", [](const std::string& spec) { return zeta::critical_b(zspec(spec)); },
      py::arg("spec"));
  m.def(
      "family_of",
      [](const std::string& spec) {
        const auto f = zeta::family_of(zspec(spec));
        return py::make_tuple(zeta::to_string(f.family), f.side_condition);
      },
      py::arg("spec"));
  m.def(
      "reduce_group",
      [](const std::string& spec) { return io::to_json(zeta::reduce_group(zspec(spec))).dump(); },
      py::arg("spec"));
  m.def(
      "brute_shell_sums",
      [](const std::string& spec, Index N, unsigned workers) {
        const auto r = zeta::brute_shell_sums(zspec(spec), N, config(0.15, 0.5, 200'000'000, workers));
        py::dict out;
        out["shell_sums"] = r.shell_sums;
        out["slope"] = r.slope;
        out["slope_stderr"] = r.slope_stderr;
        out["verdict"] = to_string(r.verdict);
        out["method"] = r.method;
        return out;
      },
      py::arg("spec"), py::arg("N") = 5000, py::arg("workers") = 0);
}
