#include "cvhide/states.hpp"

#include <cmath>
#include <sstream>

namespace cvhide {

StateSpec StateSpec::fock(int n) {
    if (n < 0) throw invalid_parameter("fock: n must be a non-negative integer");
    StateSpec s;
    s.family = Family::fock;
    s.n = n;
    return s;
}

StateSpec StateSpec::coherent(complexd alpha) {
    StateSpec s;
    s.family = Family::coherent;
    s.alpha = alpha;
    return s;
}

StateSpec StateSpec::thermal(double nu) {
    if (nu < 0) throw invalid_parameter("thermal: nu must be >= 0");
    StateSpec s;
    s.family = Family::thermal;
    s.nu = nu;
    return s;
}

StateSpec StateSpec::squeezed(double r) {
    if (r < 0) throw invalid_parameter("squeezed: r must be >= 0");
    StateSpec s;
    s.family = Family::squeezed;
    s.r = r;
    return s;
}

StateSpec StateSpec::tmsv(double r) {
    if (r < 0) throw invalid_parameter("tmsv: r must be >= 0");
    StateSpec s;
    s.family = Family::tmsv;
    s.r = r;
    return s;
}

StateSpec StateSpec::even_thermal(double lambda) {
    if (lambda < 0 || lambda >= 1) throw invalid_parameter("even_thermal: lambda must be in [0,1)");
    StateSpec s;
    s.family = Family::even_thermal;
    s.lambda = lambda;
    return s;
}

StateSpec StateSpec::odd_thermal(double lambda) {
    if (lambda < 0 || lambda >= 1) throw invalid_parameter("odd_thermal: lambda must be in [0,1)");
    StateSpec s;
    s.family = Family::odd_thermal;
    s.lambda = lambda;
    return s;
}

std::string StateSpec::name() const {
    std::ostringstream os;
    switch (family) {
        case Family::fock: os << "fock(" << n << ")"; break;
        case Family::coherent: os << "coherent(" << alpha.real() << (alpha.imag() < 0 ? "" : "+") << alpha.imag() << "i)"; break;
        case Family::thermal: os << "thermal(" << nu << ")"; break;
        case Family::squeezed: os << "squeezed(" << r << ")"; break;
        case Family::tmsv: os << "tmsv(" << r << ")"; break;
        case Family::even_thermal: os << "even_thermal(" << lambda << ")"; break;
        case Family::odd_thermal: os << "odd_thermal(" << lambda << ")"; break;
    }
    return os.str();
}

namespace {

// Log of the Poisson upper-tail bound P(N >= d) <= p_d / (1 - x/(d+1)), x = |α|².
double log_poisson_tail(double x, int d) {
    if (x == 0.0) return d == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    double logp = -x + d * std::log(x) - std::lgamma(double(d) + 1.0);
    if (x / (d + 1.0) < 1.0) logp -= std::log1p(-x / (d + 1.0));
    return logp;
}

} // namespace

double truncation_tail_mass(const StateSpec& spec, int dim) {
    using F = StateSpec::Family;
    switch (spec.family) {
        case F::fock:
            return dim > spec.n ? 0.0 : 1.0;
        case F::thermal: {
            if (spec.nu == 0.0) return 0.0;
            return std::pow(spec.nu / (spec.nu + 1.0), double(dim));
        }
        case F::tmsv: {
            const double t2 = std::pow(std::tanh(spec.r), 2);
            return t2 == 0.0 ? 0.0 : std::pow(t2, double(dim));
        }
        case F::even_thermal:
        case F::odd_thermal: {
            const double l2 = spec.lambda * spec.lambda;
            if (l2 == 0.0) return 0.0;
            return std::pow(l2, std::ceil(double(dim) / 2.0));
        }
        case F::squeezed: {
            const double t2 = std::pow(std::tanh(spec.r), 2);
            if (t2 == 0.0) return 0.0;
            // amplitude² at level 2k is ≤ (tanh²r)^k / cosh r; geometric sum bound
            return std::pow(std::cosh(spec.r), 2.0) * std::pow(t2, std::floor(double(dim) / 2.0));
        }
        case F::coherent:
            return std::exp(log_poisson_tail(std::norm(spec.alpha), dim));
    }
    return 1.0;
}

int truncation_dim_for(const StateSpec& spec, double tail_tol) {
    if (!(tail_tol > 0.0 && tail_tol < 1e-2))
        throw invalid_parameter("truncation_dim_for: tail_tol must be in (0, 1e-2)");
    if (spec.family == StateSpec::Family::fock) return std::max(8, spec.n + 1);
    int d = 8;
    while (truncation_tail_mass(spec, d) >= tail_tol) {
        ++d;
        if (d > 2'000'000) throw numeric_error("truncation_dim_for: cutoff search diverged");
    }
    return d;
}

Vector state_vector(const StateSpec& spec, int dim) {
    using F = StateSpec::Family;
    switch (spec.family) {
        case F::fock: {
            if (spec.n >= dim) throw invalid_parameter("state_vector: fock level above cutoff");
            Vector v = Vector::Zero(dim);
            v(spec.n) = 1.0;
            return v;
        }
        case F::coherent:
            return coherent_amplitudes(spec.alpha, dim);
        case F::squeezed: {
            // S(r)|0> = (1/√cosh r) Σ_k (tanh r)^k √((2k)!)/(2^k k!) |2k>
            Vector v = Vector::Zero(dim);
            const double th = std::tanh(spec.r);
            double c = 1.0 / std::sqrt(std::cosh(spec.r));
            v(0) = c;
            for (int k = 1; 2 * k < dim; ++k) {
                c *= th * std::sqrt((2.0 * k - 1.0) / (2.0 * k));
                v(2 * k) = c;
            }
            return v;
        }
        case F::tmsv: {
            // (1/cosh r) Σ_k (−tanh r)^k |kk>
            Vector v = Vector::Zero(Eigen::Index(dim) * dim);
            const double th = std::tanh(spec.r);
            double c = 1.0 / std::cosh(spec.r);
            for (int k = 0; k < dim; ++k) {
                v(Eigen::Index(k) * dim + k) = c;
                c *= -th;
            }
            return v;
        }
        default:
            throw invalid_parameter("state_vector: not a pure family");
    }
}

TruncatedOperator make_state(const StateSpec& spec, int dim) {
    using F = StateSpec::Family;
    if (dim < 2) throw invalid_parameter("make_state: dim must be >= 2");
    Matrix m;
    int modes = 1;
    switch (spec.family) {
        case F::fock:
        case F::coherent:
        case F::squeezed: {
            const Vector v = state_vector(spec, dim);
            m = v * v.adjoint();
            break;
        }
        case F::tmsv: {
            const Vector v = state_vector(spec, dim);
            m = v * v.adjoint();
            modes = 2;
            break;
        }
        case F::thermal: {
            m = Matrix::Zero(dim, dim);
            const double q = spec.nu / (spec.nu + 1.0);
            double p = 1.0 / (spec.nu + 1.0);
            for (int k = 0; k < dim; ++k) {
                m(k, k) = p;
                p *= q;
            }
            break;
        }
        case F::even_thermal:
        case F::odd_thermal: {
            m = Matrix::Zero(dim, dim);
            const int off = spec.family == F::odd_thermal ? 1 : 0;
            const double l2 = spec.lambda * spec.lambda;
            double p = 1.0 - l2;
            for (int k = off; k < dim; k += 2) {
                m(k, k) = p;
                p *= l2;
            }
            break;
        }
    }
    const double tr = m.trace().real();
    if (tr <= 0.0) throw numeric_error("make_state: vanishing trace at this cutoff");
    TruncatedOperator out{dim, modes, std::move(m), true, 1.0 - tr};
    out.entries /= tr;
    return out;
}

TruncatedOperator make_state_auto(const StateSpec& spec, double tail_tol) {
    return make_state(spec, truncation_dim_for(spec, tail_tol));
}

} // namespace cvhide
