// Python bindings for the core operations: sieves, characters, exponential
// sum grids, arcs, pretentious scans, and the certificate machinery.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "l1lab/arcs.hpp"
#include "l1lab/arith.hpp"
#include "l1lab/cli.hpp"
#include "l1lab/decomp.hpp"
#include "l1lab/expsum.hpp"
#include "l1lab/fnspec.hpp"
#include "l1lab/pretentious.hpp"

namespace py = pybind11;
using namespace l1lab;

namespace {

py::array_t<std::complex<double>> to_array(const std::vector<cplx>& v, size_t offset = 0) {
  py::array_t<std::complex<double>> out(v.size() - offset);
  auto buf = out.mutable_unchecked<1>();
  for (size_t i = offset; i < v.size(); ++i) buf(i - offset) = v[i];
  return out;
}

}  // namespace

PYBIND11_MODULE(_l1lab, m) {
  m.doc() = "L1 norms of exponential sums with multiplicative coefficients";
  m.attr("__version__") = kToolVersion;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  py::class_<FactorSieve>(m, "FactorSieve")
      .def(py::init<uint64_t>(), py::arg("limit"))
      .def_property_readonly("limit", &FactorSieve::limit)
      .def("spf", &FactorSieve::spf)
      .def("is_prime", &FactorSieve::is_prime)
      .def("omega", &FactorSieve::omega)
      .def("big_omega", &FactorSieve::big_omega)
      .def("primes",
           [](const FactorSieve& s) {
             py::array_t<uint32_t> out(s.primes().size());
             auto buf = out.mutable_unchecked<1>();
             for (size_t i = 0; i < s.primes().size(); ++i) buf(i) = s.primes()[i];
             return out;
           })
      .def("factor", [](const FactorSieve& s, uint64_t n) {
        std::vector<FactorSieve::PrimePower> pp;
        s.factor(n, pp);
        std::vector<std::pair<uint32_t, uint32_t>> out;
        for (auto [p, k] : pp) out.emplace_back(p, k);
        return out;
      });

  py::class_<MultFnSpec>(m, "MultFnSpec")
      .def_property_readonly("limit", &MultFnSpec::limit)
      .def_property_readonly("completely_multiplicative",
                             &MultFnSpec::completely_multiplicative)
      .def("on_prime", &MultFnSpec::on_prime)
      .def("on_prime_power", &MultFnSpec::on_prime_power);

  m.def("standard_fn",
        [](const std::string& kind, uint64_t limit, const FactorSieve& sieve) {
          if (kind == "one") return standard_fn(StandardFn::one, limit, sieve);
          if (kind == "moebius") return standard_fn(StandardFn::moebius, limit, sieve);
          if (kind == "liouville") return standard_fn(StandardFn::liouville, limit, sieve);
          throw DomainError("unknown standard function " + kind);
        },
        py::arg("kind"), py::arg("limit"), py::arg("sieve"));
  m.def("parse_fn_spec",
        [](const std::string& s, const FactorSieve& sieve, uint64_t limit) {
          return parse_fn_spec(s, sieve, limit);
        },
        py::arg("spec"), py::arg("sieve"), py::arg("limit"));
  m.def("eval_mult_fn", &eval_mult_fn);
  m.def("eval_mult_fn_range", [](const MultFnSpec& f, const FactorSieve& s, uint64_t n) {
    return to_array(eval_mult_fn_range(f, s, n), 1);
  });

  py::class_<DirichletCharacter>(m, "DirichletCharacter")
      .def_property_readonly("modulus", &DirichletCharacter::modulus)
      .def_property_readonly("conductor", &DirichletCharacter::conductor)
      .def_property_readonly("order", &DirichletCharacter::order)
      .def_property_readonly("is_primitive", &DirichletCharacter::is_primitive)
      .def_property_readonly("is_principal", &DirichletCharacter::is_principal)
      .def_property_readonly("is_quadratic", &DirichletCharacter::is_quadratic)
      .def_property_readonly("is_even", &DirichletCharacter::is_even)
      .def_property_readonly("label", &DirichletCharacter::label)
      .def("__call__", &DirichletCharacter::operator())
      .def("values", [](const DirichletCharacter& c) { return to_array(c.values()); });

  m.def("characters_mod", &characters_mod);
  m.def("principal_character", &principal_character);
  m.def("kronecker_character", &kronecker_character);
  m.def("kronecker_symbol", &kronecker_symbol);
  m.def("is_fundamental_discriminant",
        [](int64_t d) { return is_fundamental_discriminant(d); });
  m.def("fundamental_discriminants", &fundamental_discriminants, py::arg("bound"),
        py::arg("include_one") = true);
  m.def("primitive_inducing", &primitive_inducing);
  m.def("induce", &induce);
  m.def("gauss_sum", &gauss_sum);
  m.def("c_chi",
        [](const DirichletCharacter& chi, uint64_t n, const std::string& method) {
          return c_chi(chi, n,
                       method == "closed" ? CChiMethod::closed : CChiMethod::direct);
        },
        py::arg("chi"), py::arg("n"), py::arg("method") = "direct");

  py::class_<Window>(m, "Window")
      .def(py::init([](double eps, const std::string& kind) {
             return Window(eps, kind == "dyadic_bump" ? WindowKind::dyadic_bump
                                                      : WindowKind::plateau);
           }),
           py::arg("eps"), py::arg("kind") = "plateau")
      .def("__call__", &Window::operator())
      .def("derivative", &Window::derivative)
      .def("derivative_sup", &Window::derivative_sup)
      .def("support", &Window::support);
  m.def("sobolev_norm", &sobolev_norm);
  m.def("mellin_eval", &mellin_eval);

  py::class_<CoefficientVector>(m, "CoefficientVector")
      .def_property_readonly("n", &CoefficientVector::n_max)
      .def("values", [](const CoefficientVector& a) { return to_array(a.a, 1); })
      .def("l1", &CoefficientVector::l1)
      .def("l2_sq", &CoefficientVector::l2_sq);

  m.def("coefficient_vector",
        [](const MultFnSpec& f, const FactorSieve& sieve, uint64_t n, const Window* w,
           std::optional<double> t) {
          ArchimedeanTwist twist{t.value_or(0.0)};
          return coefficient_vector(f, sieve, n, w, t ? &twist : nullptr);
        },
        py::arg("f"), py::arg("sieve"), py::arg("n"), py::arg("window") = nullptr,
        py::arg("t") = std::nullopt);

  py::class_<ExpSumGrid>(m, "ExpSumGrid")
      .def_property_readonly("n", [](const ExpSumGrid& g) { return g.n; })
      .def_property_readonly("m", [](const ExpSumGrid& g) { return g.m; })
      .def_property_readonly("l1_coeff_sum",
                             [](const ExpSumGrid& g) { return g.l1_coeff_sum; })
      .def("values", [](const ExpSumGrid& g) { return to_array(g.values); })
      .def("l2_sq", &ExpSumGrid::l2_sq);

  m.def("default_grid_size", &default_grid_size, py::arg("n"), py::arg("oversample") = 8);
  m.def("grid_transform",
        [](const CoefficientVector& a, uint64_t m) {
          return grid_transform(a, m ? m : default_grid_size(a.n_max()));
        },
        py::arg("a"), py::arg("m") = 0);
  m.def("lp_norm", [](const ExpSumGrid& g, double p) {
    NormEstimate e = lp_norm(g, p);
    return std::make_pair(e.value, e.error_bound);
  });
  m.def("save_coefficients", &save_coefficients);
  m.def("load_coefficients", &load_coefficients);
  m.def("save_grid", &save_grid);
  m.def("load_grid", &load_grid);

  py::class_<ArcSet>(m, "ArcSet")
      .def_property_readonly("q_max", &ArcSet::q_max)
      .def_property_readonly("n_scale", &ArcSet::n_scale)
      .def_property_readonly("total_measure", &ArcSet::total_measure)
      .def_property_readonly("saturated", &ArcSet::saturated)
      .def("contains", &ArcSet::contains)
      .def("intervals", [](const ArcSet& a) {
        std::vector<std::tuple<uint64_t, uint64_t, double, double>> out;
        for (const Arc& arc : a.intervals())
          out.emplace_back(arc.center.num, arc.center.den, arc.left, arc.right);
        return out;
      });
  m.def("major_arcs", &major_arcs);
  m.def("locate", [](double alpha, uint64_t q, uint64_t n) {
    Location loc = locate(alpha, q, n);
    return py::make_tuple(loc.major, loc.witness.num, loc.witness.den, loc.distance);
  });
  m.def("energy_split", [](const ExpSumGrid& g, const ArcSet& a) {
    EnergySplit s = energy_split(g, a);
    return py::make_tuple(s.major_energy, s.minor_energy, s.quad_error);
  });
  m.def("minor_sup", [](const ExpSumGrid& g, const ArcSet& a) {
    SupResult s = minor_sup(g, a);
    return std::make_pair(s.value, s.alpha);
  });

  py::class_<PrimeInterval>(m, "PrimeInterval")
      .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
      .def_readonly("lo", &PrimeInterval::lo)
      .def_readonly("hi", &PrimeInterval::hi);

  m.def("distance_sq",
        [](const MultFnSpec& f, const MultFnSpec& g, double lo, double hi,
           const FactorSieve& sieve) { return distance_sq(f, g, {lo, hi}, sieve); });
  m.def("distance_sq_char",
        [](const MultFnSpec& f, const DirichletCharacter& psi, double t, double lo,
           double hi, const FactorSieve& sieve) {
          return distance_sq(f, psi, t, {lo, hi}, sieve);
        });
  m.def("min_over_t",
        [](const MultFnSpec& f, const DirichletCharacter& psi, double t_max, double lo,
           double hi, const FactorSieve& sieve, double spacing) {
          TwistFit fit = min_over_t(f, psi, t_max, {lo, hi}, sieve, spacing);
          return std::make_pair(fit.t, fit.dist_sq);
        },
        py::arg("f"), py::arg("psi"), py::arg("t_max"), py::arg("lo"), py::arg("hi"),
        py::arg("sieve"), py::arg("spacing") = 0.0);

  py::class_<ScanEntry>(m, "ScanEntry")
      .def_property_readonly("character", [](const ScanEntry& e) { return e.psi; })
      .def_readonly("t", &ScanEntry::t)
      .def_readonly("dist_sq", &ScanEntry::dist_sq);

  py::class_<PretentiousReport>(m, "PretentiousReport")
      .def_property_readonly("best", [](const PretentiousReport& r) { return r.best; })
      .def_property_readonly("runners_up",
                             [](const PretentiousReport& r) { return r.runners_up; })
      .def("to_text", &PretentiousReport::to_text);

  m.def("best_character",
        [](const MultFnSpec& f, uint64_t q, double t, double lo, double hi,
           const FactorSieve& sieve) { return best_character(f, q, t, {lo, hi}, sieve); });
  m.def("quadratic_scan",
        [](const MultFnSpec& f, uint64_t q, double lo, double hi, const FactorSieve& sieve,
           bool include_principal) {
          return quadratic_scan(f, q, {lo, hi}, sieve, include_principal);
        },
        py::arg("f"), py::arg("q"), py::arg("lo"), py::arg("hi"), py::arg("sieve"),
        py::arg("include_principal") = true);
  m.def("majorant_h", &majorant_h);

  py::class_<MultiscaleScan>(m, "MultiscaleScan")
      .def_property_readonly("ladder",
                             [](const MultiscaleScan& s) { return std::string(1, s.ladder); })
      .def_property_readonly("lo", [](const MultiscaleScan& s) { return s.interval.lo; })
      .def_property_readonly("hi", [](const MultiscaleScan& s) { return s.interval.hi; })
      .def_readonly("winner", &MultiscaleScan::winner)
      .def_readonly("dist_sq", &MultiscaleScan::dist_sq);
  py::class_<MultiscaleReport>(m, "MultiscaleReport")
      .def_readonly("scans", &MultiscaleReport::scans)
      .def_readonly("consistent", &MultiscaleReport::consistent)
      .def("to_text", &MultiscaleReport::to_text);
  m.def("multiscale_consistency", &multiscale_consistency, py::arg("f"), py::arg("eps"),
        py::arg("n_max"), py::arg("sieve"), py::arg("scan_q") = 30);

  py::class_<TKWeights>(m, "TKWeights")
      .def(py::init([](double lo, double hi, const FactorSieve& sieve) {
             return TKWeights({lo, hi}, sieve);
           }),
           py::arg("lo"), py::arg("hi"), py::arg("sieve"))
      .def_property_readonly("harmonic_sum", &TKWeights::harmonic_sum)
      .def("c1", &TKWeights::c1)
      .def("c2", &TKWeights::c2);
  m.def("tk_check", [](double lo, double hi, uint64_t n, const FactorSieve& sieve) {
    TKCheck c = tk_check({lo, hi}, n, sieve);
    return py::make_tuple(c.lhs, c.rhs, c.ratio);
  });

  m.def("presieve", [](const MultFnSpec& f, double a, const FactorSieve& sieve) {
    PresievePair p = presieve(f, a, sieve);
    return std::make_pair(std::move(p.completely), std::move(p.truncated));
  });

  py::class_<CriterionReport>(m, "CriterionReport")
      .def_readonly("degenerate", &CriterionReport::degenerate)
      .def_readonly("s_l2", &CriterionReport::s_l2)
      .def_readonly("delta1", &CriterionReport::delta1)
      .def_readonly("delta2", &CriterionReport::delta2)
      .def_readonly("delta3", &CriterionReport::delta3)
      .def_readonly("minor_sup_s1", &CriterionReport::minor_sup_s1)
      .def_readonly("minor_threshold", &CriterionReport::minor_threshold)
      .def_readonly("minor_hypothesis", &CriterionReport::minor_hypothesis)
      .def_readonly("applicable", &CriterionReport::applicable)
      .def_readonly("k_param", &CriterionReport::k_param)
      .def_readonly("implied_l1_lower", &CriterionReport::implied_l1_lower)
      .def_readonly("measured_l1", &CriterionReport::measured_l1)
      .def_readonly("measured_l1_error", &CriterionReport::measured_l1_error)
      .def("to_text", &CriterionReport::to_text);
  m.def("criterion_certificate",
        [](const ExpSumGrid& s1, const ExpSumGrid& s2, const ExpSumGrid& s3,
           const ArcSet& arcs, double delta) {
          CriterionInput in{&s1, &s2, &s3, &arcs, delta};
          return criterion_certificate(in);
        });

  m.def("run_experiment",
        [](const std::string& command, const std::string& f, uint64_t n, uint64_t q,
           double t, double delta, double eps, double a, int oversample, uint64_t seed,
           const std::string& out, const std::string& format) {
          ExperimentConfig c;
          c.command = command;
          c.fn_spec = f;
          c.n = n;
          c.q = q;
          c.t_max = t;
          c.delta = delta;
          c.eps = eps;
          c.a_param = a;
          c.oversample = oversample;
          c.seed = seed;
          c.out_path = out;
          c.format = parse_format(format);
          run_experiment(c);
        },
        py::arg("command"), py::arg("f"), py::arg("n"), py::arg("q") = 0,
        py::arg("t") = 0.0, py::arg("delta") = 0.0, py::arg("eps") = 0.0,
        py::arg("a") = 0.0, py::arg("oversample") = 8, py::arg("seed") = 0,
        py::arg("out") = "report.csv", py::arg("format") = "csv");
}
