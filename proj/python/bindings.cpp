#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "robinlab/arithmetic.hpp"
#include "robinlab/cli.hpp"
#include "robinlab/errors.hpp"
#include "robinlab/euler_products.hpp"
#include "robinlab/gap_series.hpp"
#include "robinlab/primes.hpp"
#include "robinlab/robin.hpp"

namespace py = pybind11;
using namespace robinlab;

namespace {

py::dict as_dict(const RobinEvaluation& e) {
    py::dict d;
    d["log_n"] = e.log_n;
    d["loglog_n"] = e.loglog_n;
    d["sigma_ratio"] = e.sigma_ratio;
    d["robin_rhs_ratio"] = e.robin_rhs_ratio;
    d["delta"] = e.delta;
    d["violates"] = e.violates;
    d["special"] = e.special == RobinSpecial::normal ? "normal" : "loglog_nonpositive";
    d["near_tie"] = e.near_tie;
    return d;
}

py::dict as_dict(const ScanRow& r) {
    auto d = as_dict(r.eval);
    d["n"] = r.n;
    d["sigma"] = r.sigma;
    return d;
}

// Accepts an integer n or a factorization string such as "2^4*3^2*5*7".
Factorization to_factorization(const py::object& n) {
    if (py::isinstance<py::str>(n)) return Factorization::parse(n.cast<std::string>());
    return factorize(n.cast<std::uint64_t>());
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> as_pairs(const Factorization& f) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    for (const auto& pp : f.factors()) out.emplace_back(pp.prime, pp.exponent);
    return out;
}

SieveOptions sieve_options(unsigned threads) {
    SieveOptions o;
    o.threads = threads;
    return o;
}

}  // namespace

PYBIND11_MODULE(_robinlab, m) {
    m.doc() = "Robin-inequality and prime-gap series toolkit";

    static py::exception<CapacityError> capacity(m, "CapacityError", PyExc_MemoryError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const CapacityError& e) {
            py::set_error(capacity, e.what());
        } catch (const DomainError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const RangeError& e) {
            PyErr_SetString(PyExc_IndexError, e.what());
        }
    });

    m.def("primes_up_to", [](std::uint64_t limit, unsigned threads) {
        const auto t = primes_up_to(limit, sieve_options(threads));
        return std::vector<std::uint64_t>(t.primes().begin(), t.primes().end());
    }, py::arg("limit"), py::arg("threads") = 1);

    m.def("factorize", [](std::uint64_t n) { return as_pairs(factorize(n)); }, py::arg("n"));

    m.def("sigma", [](const py::object& n) { return sigma_of(to_factorization(n)); }, py::arg("n"));

    m.def("robin_check", [](const py::object& n) { return as_dict(robin_check(to_factorization(n))); },
          py::arg("n"));

    m.def("robin_delta", [](const py::object& n) { return robin_delta(to_factorization(n)); }, py::arg("n"));

    m.def("bound_rhs", [](const std::string& variant, const py::object& n, double c) {
        BoundVariant v;
        if (variant == "scaled_argument") v = BoundVariant::scaled_argument;
        else if (variant == "subexp_argument") v = BoundVariant::subexp_argument;
        else if (variant == "additive_error") v = BoundVariant::additive_error;
        else throw DomainError("unknown bound variant: " + variant);
        return bound_rhs(v, to_factorization(n), c);
    }, py::arg("variant"), py::arg("n"), py::arg("c") = 1.0);

    m.def("ramanujan_constant", &ramanujan_constant);

    m.def("scan_range", [](std::uint64_t lo, std::uint64_t hi, bool odd_only, unsigned threads, std::size_t top) {
        ScanOptions o;
        o.odd_only = odd_only;
        o.threads = threads;
        o.top_records = top;
        ScanResult r;
        {
            py::gil_scoped_release release;
            r = scan_range(lo, hi, o);
        }
        py::dict d;
        d["evaluated"] = r.evaluated;
        py::list violators, records;
        for (const auto& row : r.violators) violators.append(as_dict(row));
        for (const auto& row : r.max_delta_records) records.append(as_dict(row));
        d["violators"] = violators;
        d["max_delta_records"] = records;
        d["near_ties"] = r.near_ties;
        return d;
    }, py::arg("lo"), py::arg("hi"), py::arg("odd_only") = false, py::arg("threads") = 1, py::arg("top") = 10);

    m.def("extremal_candidates", [](std::size_t m_max, std::size_t budget, bool records_only) {
        ExtremalOptions o;
        o.records_only = records_only;
        py::list out;
        for (const auto& c : extremal_candidates(m_max, budget, o)) {
            py::dict d;
            d["exponents"] = c.exponents;
            d["factorization"] = c.factorization.to_string();
            d["value"] = c.factorization.value();
            d["log_n"] = c.log_n;
            d["sigma_ratio"] = c.sigma_ratio;
            out.append(d);
        }
        return out;
    }, py::arg("m_max"), py::arg("budget"), py::arg("records_only") = false);

    m.def("zeta_enclosure", [](unsigned k, std::size_t m) {
        const auto table = EulerProductTable::with_prime_count(m, k);
        const auto iv = table.zeta_enclosure(k, m);
        return std::make_pair(iv.lo, iv.hi);
    }, py::arg("k"), py::arg("m"));

    m.def("gap_series", [](std::uint64_t limit) {
        GapSeriesState s;
        {
            py::gil_scoped_release release;
            s = series_scan(limit);
        }
        py::dict d;
        d["n"] = s.n;
        d["p_n"] = s.p_n;
        d["partial_sum"] = s.partial_sum;
        d["running_sup"] = s.running_sup;
        d["sup_at"] = s.sup_at;
        return d;
    }, py::arg("limit"));

    m.def("theta_check", [](std::uint64_t limit, double c0) {
        ThetaCheckResult r;
        {
            py::gil_scoped_release release;
            r = theta_inequality_check(primes_up_to(limit), limit, c0);
        }
        py::dict d;
        d["checked"] = r.checked;
        d["all_satisfied"] = r.all_satisfied;
        d["max_c_needed"] = r.max_c_needed;
        d["max_c_at"] = r.max_c_at;
        d["final_theta"] = r.final_theta;
        if (r.first_failure) d["first_failure_p"] = r.first_failure->p_n;
        else d["first_failure_p"] = py::none();
        return d;
    }, py::arg("limit"), py::arg("c0"));

    m.def("run_cli", [](std::vector<std::string> args) {
        args.insert(args.begin(), "robinlab");
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs a CLI invocation in-process and returns (exit_code, stdout, stderr).");
}
