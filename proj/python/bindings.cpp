#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "factdual/dickman.hpp"
#include "factdual/distribution.hpp"
#include "factdual/duality.hpp"
#include "factdual/experiments.hpp"
#include "factdual/series.hpp"
#include "factdual/sieve.hpp"

namespace py = pybind11;
using namespace factdual;

namespace {

PrimeFn fn_of(const std::string& text) { return PrimeFn::parse(text); }

StreamOptions opts_of(u64 block_size, unsigned workers) { return {block_size, workers}; }

}  // namespace

PYBIND11_MODULE(_factdual, m) {
    m.doc() = "multiplicative structure toolkit: sieve records, duality sums, "
              "series accumulators, smooth counting, and the Dickman density";

    py::class_<FactorRecord>(m, "FactorRecord")
        .def_readonly("n", &FactorRecord::n)
        .def_readonly("mu", &FactorRecord::mu)
        .def_readonly("omega", &FactorRecord::omega)
        .def_readonly("big_omega", &FactorRecord::big_omega)
        .def_readonly("spf", &FactorRecord::spf)
        .def_readonly("lpf", &FactorRecord::lpf)
        .def_readonly("p2_strict", &FactorRecord::p2_strict)
        .def_readonly("p2_mult", &FactorRecord::p2_mult)
        .def("squarefree", &FactorRecord::squarefree)
        .def("__repr__", [](const FactorRecord& r) {
            return "FactorRecord(n=" + std::to_string(r.n) + ", mu=" + std::to_string(r.mu) +
                   ", omega=" + std::to_string(r.omega) + ", lpf=" + std::to_string(r.lpf) + ")";
        });

    m.def("factor_record", &factor_record, py::arg("n"),
          "Exact multiplicative data for one integer (trial division).");
    m.def(
        "sieve_records",
        [](u64 lo, u64 hi) {
            const PrimeBasis basis = build_prime_basis(isqrt(hi > lo ? hi - 1 : lo));
            return sieve_block(lo, hi, basis).records;
        },
        py::arg("lo"), py::arg("hi"), "Sieved records for [lo, hi).");
    m.def("factorize", &factorize, py::arg("n"), "Ascending (prime, exponent) pairs.");

    m.def(
        "dual_sum_largest",
        [](u64 n, int k, const std::string& f) { return dual_sum_largest(n, k, fn_of(f)); },
        py::arg("n"), py::arg("k") = 1, py::arg("f") = "id");
    m.def(
        "dual_sum_smallest",
        [](u64 n, int k, const std::string& f) { return dual_sum_smallest(n, k, fn_of(f)); },
        py::arg("n"), py::arg("k") = 1, py::arg("f") = "id");
    m.def(
        "inv_sum_smallest_side",
        [](u64 n, int k, const std::string& f) { return inv_sum_smallest_side(n, k, fn_of(f)); },
        py::arg("n"), py::arg("k") = 1, py::arg("f") = "id");
    m.def(
        "inv_sum_second_largest",
        [](u64 n, int k, const std::string& f) { return inv_sum_second_largest(n, k, fn_of(f)); },
        py::arg("n"), py::arg("k") = 2, py::arg("f") = "id");
    m.def(
        "identity_sides",
        [](const std::string& identity, u64 n, int k, const std::string& f) {
            return identity_sides(identity, n, k, fn_of(f));
        },
        py::arg("identity"), py::arg("n"), py::arg("k") = 1, py::arg("f") = "id",
        "Both sides of one named identity; equal when the identity holds.");
    m.def("identity_names", &identity_names);
    m.def(
        "verify_identities",
        [](u64 max_n, int k_max) {
            VerifyOptions vo;
            vo.k_max = k_max;
            const VerifyResult r = verify_identities(max_n, vo);
            py::list failures;
            for (const IdentityReport& f : r.failures)
                failures.append(py::make_tuple(f.identity, f.n, f.k, f.fn, f.lhs, f.rhs));
            return py::make_tuple(r.checked, failures);
        },
        py::arg("max_n"), py::arg("k_max") = 0,
        "Exhaustive identity check; returns (instances checked, failure list).");

    m.def(
        "series_totals",
        [](u64 limit, u64 block_size, unsigned workers) {
            const auto t = accumulate_series(limit, {}, {limit}, opts_of(block_size, workers));
            py::dict d;
            d["M"] = t.totals[0].M;
            d["M_omega"] = t.totals[0].M_omega;
            d["m"] = t.totals[0].m.value();
            d["m_omega"] = t.totals[0].m_omega.value();
            return d;
        },
        py::arg("limit"), py::arg("block_size") = u64{0}, py::arg("workers") = 0u,
        "Mertens-type sums over n <= limit.");
    m.def(
        "floor_weighted_sum",
        [](u64 x, const std::string& f, const std::string& weight) {
            FloorWeight w;
            if (weight == "unit")
                w = FloorWeight::unit;
            else if (weight == "omega_minus_1")
                w = FloorWeight::omega_minus_1;
            else if (weight == "omega")
                w = FloorWeight::omega;
            else
                throw std::invalid_argument("weight must be unit|omega_minus_1|omega");
            return floor_weighted_sum(x, fn_of(f), w);
        },
        py::arg("x"), py::arg("f") = "id", py::arg("weight") = "unit");

    m.def("psi", [](u64 x, u64 y) { return psi(x, y); }, py::arg("x"), py::arg("y"),
          "Count of y-smooth n <= x.");
    m.def("psi2", [](u64 x, u64 y) { return psi2(x, y); }, py::arg("x"), py::arg("y"),
          "Count of n <= x with strict second-largest prime factor <= y.");
    m.def("repeated_lpf_count", [](u64 x) { return repeated_lpf_count(x); }, py::arg("x"),
          "Count of n <= x whose largest prime factor repeats.");
    m.def(
        "residue_counts",
        [](u64 x, u64 k, const std::string& side) {
            const auto t = residue_counts(x, k, parse_side(side));
            return py::make_tuple(t.counts, t.undefined_count);
        },
        py::arg("x"), py::arg("k"), py::arg("side") = "largest",
        "Residue-class counts of a prime-factor side mod k, plus the undefined bucket.");

    py::class_<RhoTable>(m, "RhoTable")
        .def("__call__", &RhoTable::operator(), py::arg("alpha"))
        .def_property_readonly("step", &RhoTable::step)
        .def_property_readonly("max_alpha", &RhoTable::max_alpha);
    m.def(
        "build_rho_table",
        [](double alpha_max, u64 inv_h, bool richardson) {
            return build_rho_table(alpha_max, inv_h,
                                   richardson ? RhoMethod::richardson : RhoMethod::trapezoid);
        },
        py::arg("alpha_max") = 16.0, py::arg("inv_h") = u64{1024}, py::arg("richardson") = true,
        "Grid solution of the delay equation for the smooth-density function.");
    m.def(
        "smooth_ratio",
        [](u64 x, const std::string& alpha, const RhoTable& rho) {
            return smooth_ratio(x, Rational::parse(alpha), rho);
        },
        py::arg("x"), py::arg("alpha"), py::arg("rho"));
    m.def(
        "rho2_empirical",
        [](u64 x, const std::string& alpha) { return rho2_empirical(x, Rational::parse(alpha)); },
        py::arg("x"), py::arg("alpha"));
    m.def(
        "smoothness_bound",
        [](u64 x, const std::string& alpha) { return smoothness_bound(x, Rational::parse(alpha)); },
        py::arg("x"), py::arg("alpha"), "floor(x^(1/alpha)) by exact integer arithmetic.");

    m.def(
        "sqrt_window",
        [](u64 x) {
            const auto r = sqrt_window_experiment(x);
            return py::make_tuple(r.sum_P1, r.sum_P2, r.prime_route);
        },
        py::arg("x"),
        "Indicator-window sums over (sqrt(x), x]: records route, strict-P2 route, prime route.");

    m.def(
        "run_experiments",
        [](const std::string& config_json) {
            const RunResult r = run_experiments(config_from_json_text(config_json));
            py::list outs;
            for (const ManifestEntry& e : r.outputs) outs.append(e.file);
            return py::make_tuple(r.ok, outs);
        },
        py::arg("config_json"), "Run a JSON experiment config; returns (ok, output files).");
}
