#include "orthoplex/interaction.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "orthoplex/optimize.hpp"
#include "orthoplex/quadrature.hpp"
#include "orthoplex/taylor_series.hpp"

namespace orthoplex {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Richardson-extrapolated central difference of the given order.
double fd_derivative(const std::function<double(double)>& f, double x, int order, double h) {
    auto stencil = [&](double step) {
        double acc = 0.0;
        double binom = 1.0;
        for (int i = 0; i <= order; ++i) {
            const double sign = (i % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binom * f(x + (order / 2.0 - i) * step);
            binom = binom * (order - i) / (i + 1.0);
        }
        return acc / powi(step, order);
    };
    const double coarse = stencil(h);
    const double fine = stencil(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

double fd_step_for_order(int order, double x) {
    static constexpr double base[9] = {0.0,    8.5e-4, 3.1e-3, 7.8e-3, 1.56e-2,
                                       2.7e-2, 4.1e-2, 5.8e-2, 7.8e-2};
    double h = (order <= 8) ? base[order] : 0.1;
    const double room = 1.9 * (1.0 - std::abs(x)) / std::max(order, 1);
    return std::min(h, 0.9 * room);
}

}  // namespace

Interaction Interaction::zero() { return Interaction(); }

Interaction Interaction::linear(double slope) {
    Interaction g;
    g.family_ = InteractionFamily::Linear;
    g.a_ = slope;
    return g;
}

Interaction Interaction::curie_weiss(double beta_j, double h) {
    Interaction g;
    g.family_ = InteractionFamily::CurieWeiss;
    g.a_ = beta_j;
    g.b_ = h;
    return g;
}

Interaction Interaction::polynomial(std::vector<double> coeffs) {
    Interaction g;
    g.family_ = InteractionFamily::Polynomial;
    g.coeffs_ = std::move(coeffs);
    return g;
}

Interaction Interaction::expression(ExprPtr ast) {
    if (!ast) throw std::invalid_argument("Interaction: null expression");
    Interaction g;
    g.family_ = InteractionFamily::Expression;
    g.ast_ = std::move(ast);
    return g;
}

double Interaction::operator()(double m) const {
    switch (family_) {
        case InteractionFamily::Zero:
            return 0.0;
        case InteractionFamily::Linear:
            return a_ * m;
        case InteractionFamily::CurieWeiss:
            return 0.5 * a_ * m * m + b_ * m;
        case InteractionFamily::Polynomial: {
            double acc = 0.0;
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * m + *it;
            return acc;
        }
        case InteractionFamily::Expression:
            return eval_expression(ast_, m);
    }
    return 0.0;
}

double Interaction::derivative(double m, int order) const {
    if (order < 0) throw std::invalid_argument("Interaction::derivative: order >= 0 required");
    if (order == 0) return (*this)(m);
    switch (family_) {
        case InteractionFamily::Zero:
            return 0.0;
        case InteractionFamily::Linear:
            return order == 1 ? a_ : 0.0;
        case InteractionFamily::CurieWeiss:
            if (order == 1) return a_ * m + b_;
            return order == 2 ? a_ : 0.0;
        case InteractionFamily::Polynomial: {
            double acc = 0.0;
            for (int i = static_cast<int>(coeffs_.size()) - 1; i >= order; --i) {
                double fall = 1.0;
                for (int j = 0; j < order; ++j) fall *= i - j;
                acc = acc * m + coeffs_[i] * fall;
            }
            return acc;
        }
        case InteractionFamily::Expression: {
            if (order > derivative_order_supported())
                throw std::invalid_argument("Interaction::derivative: order beyond supported");
            auto f = [this](double x) { return eval_expression(ast_, x); };
            return fd_derivative(f, m, order, fd_step_for_order(order, m));
        }
    }
    return 0.0;
}

int Interaction::derivative_order_supported() const {
    return analytic_derivatives() ? 64 : 2 * kMaxType;
}

bool Interaction::is_even() const {
    switch (family_) {
        case InteractionFamily::Zero:
            return true;
        case InteractionFamily::Linear:
            return a_ == 0.0;
        case InteractionFamily::CurieWeiss:
            return b_ == 0.0;
        case InteractionFamily::Polynomial: {
            for (size_t i = 1; i < coeffs_.size(); i += 2)
                if (coeffs_[i] != 0.0) return false;
            return true;
        }
        case InteractionFamily::Expression: {
            double scale = 1.0;
            for (int i = 0; i <= 32; ++i) {
                const double m = i / 32.0;
                scale = std::max({scale, std::abs((*this)(m)), std::abs((*this)(-m))});
            }
            for (int i = 1; i <= 32; ++i) {
                const double m = i / 32.0;
                if (std::abs((*this)(m) - (*this)(-m)) > 1e-12 * scale) return false;
            }
            return true;
        }
    }
    return false;
}

std::string Interaction::describe() const {
    std::ostringstream os;
    auto num = [](double v) {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
        (void)ec;
        return std::string(buf, ptr);
    };
    switch (family_) {
        case InteractionFamily::Zero:
            return "zero";
        case InteractionFamily::Linear:
            return "linear:beta=" + num(a_);
        case InteractionFamily::CurieWeiss:
            return "cw:betaJ=" + num(a_) + ",h=" + num(b_);
        case InteractionFamily::Polynomial: {
            os << "poly:";
            for (size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << num(coeffs_[i]);
            return os.str();
        }
        case InteractionFamily::Expression:
            return "expr:" + print_expression(ast_);
    }
    return {};
}

Interaction parse_interaction(const std::string& text) {
    auto parse_num = [](const std::string& s) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw std::invalid_argument("parse_interaction: malformed number '" + s + "'");
        return v;
    };
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> out;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= s.size(); ++i) {
            if (i == s.size() || s[i] == sep) {
                out.push_back(s.substr(start, i - start));
                start = i + 1;
            }
        }
        return out;
    };

    if (text == "zero") return Interaction::zero();

    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("parse_interaction: unknown family '" + text + "'");
    const std::string family = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);

    if (family == "linear") {
        if (body.rfind("beta=", 0) != 0)
            throw std::invalid_argument("parse_interaction: expected linear:beta=<value>");
        return Interaction::linear(parse_num(body.substr(5)));
    }
    if (family == "cw") {
        double beta_j = 0.0, h = 0.0;
        bool saw_bj = false;
        for (const auto& item : split(body, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("parse_interaction: expected key=value in cw spec");
            const std::string key = item.substr(0, eq);
            const double value = parse_num(item.substr(eq + 1));
            if (key == "betaJ") {
                beta_j = value;
                saw_bj = true;
            } else if (key == "h") {
                h = value;
            } else {
                throw std::invalid_argument("parse_interaction: unknown cw key '" + key + "'");
            }
        }
        if (!saw_bj) throw std::invalid_argument("parse_interaction: cw spec requires betaJ");
        return Interaction::curie_weiss(beta_j, h);
    }
    if (family == "poly") {
        std::vector<double> coeffs;
        for (const auto& item : split(body, ',')) coeffs.push_back(parse_num(item));
        if (coeffs.empty()) throw std::invalid_argument("parse_interaction: empty poly spec");
        return Interaction::polynomial(std::move(coeffs));
    }
    if (family == "expr") {
        Interaction g = Interaction::expression(parse_expression(body));
        for (int i = 0; i <= 64; ++i) {
            const double m = -1.0 + i / 32.0;
            double v;
            try {
                v = g(m);
            } catch (const std::domain_error& e) {
                throw std::invalid_argument(std::string("parse_interaction: domain violation: ") +
                                            e.what());
            }
            if (!std::isfinite(v))
                throw std::invalid_argument("parse_interaction: non-finite value on probe grid");
        }
        return g;
    }
    throw std::invalid_argument("parse_interaction: unknown family '" + family + "'");
}

double psi(const Interaction& g, double m) {
    if (std::abs(m) > 1.0) throw std::invalid_argument("psi: |m| <= 1 required");
    return g(m) + limiting_entropy_slice(m);
}

double psi_derivative(const Interaction& g, double m, int order) {
    if (order < 0) throw std::invalid_argument("psi_derivative: order >= 0 required");
    if (std::abs(m) >= 1.0)
        throw std::invalid_argument("psi_derivative: interior point required");
    if (order == 0) return psi(g, m);
    const auto s = entropy_slice_derivatives(m, order);
    return g.derivative(m, order) + s[order];
}

namespace {

struct Candidate {
    double m;
    double value;
};

// Newton (or bisection fallback) polish on psi' inside the bracket.
double polish_maximizer(const Interaction& g, double m, double lo, double hi) {
    const double curvature = psi_derivative(g, m, 2);
    if (std::abs(curvature) > 1e-8) {
        double x = m;
        for (int it = 0; it < 80; ++it) {
            const double grad = psi_derivative(g, x, 1);
            const double hess = psi_derivative(g, x, 2);
            if (hess == 0.0) break;
            const double step = grad / hess;
            const double next = x - step;
            if (!(next > lo && next < hi)) break;
            x = next;
            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(x))) break;
        }
        if (psi(g, x) >= psi(g, m)) return x;
        return m;
    }
    // Degenerate curvature (type k >= 2): psi' still changes sign strictly.
    auto grad = [&](double x) { return psi_derivative(g, x, 1); };
    const double ga = grad(lo), gb = grad(hi);
    if (std::isfinite(ga) && std::isfinite(gb) && (ga > 0.0) != (gb > 0.0))
        return bisect_root(grad, lo, hi);
    return m;
}

}  // namespace

std::vector<double> find_global_maxima(const Interaction& g, double tol_value, double tol_sep) {
    constexpr int kGridPoints = 4097;
    std::vector<double> ms(kGridPoints), vals(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
        ms[i] = -1.0 + 2.0 * i / (kGridPoints - 1);
        vals[i] = psi(g, ms[i]);
        if (!std::isfinite(vals[i]))
            throw std::runtime_error("find_global_maxima: non-finite psi value at m = " +
                                     std::to_string(ms[i]));
    }

    std::vector<Candidate> candidates;
    for (int i = 1; i + 1 < kGridPoints; ++i) {
        if (vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1]) {
            auto r = golden_max([&](double m) { return psi(g, m); }, ms[i - 1], ms[i + 1], 1e-14);
            double m = polish_maximizer(g, r.argmax, ms[i - 1], ms[i + 1]);
            candidates.push_back({m, psi(g, m)});
        }
    }
    // Endpoint-adjacent brackets, in case the grid maximum sits at +-1.
    for (int side = 0; side < 2; ++side) {
        const int i = side == 0 ? 0 : kGridPoints - 1;
        const int j = side == 0 ? 1 : kGridPoints - 2;
        if (vals[i] > vals[j]) {
            auto r = golden_max([&](double m) { return psi(g, m); }, std::min(ms[i], ms[j]),
                                std::max(ms[i], ms[j]), 1e-14);
            candidates.push_back({r.argmax, r.value});
        }
    }
    if (candidates.empty()) throw std::runtime_error("find_global_maxima: no local maxima found");

    double best = -kInf;
    for (const auto& c : candidates) best = std::max(best, c.value);
    if (psi(g, 1.0) >= best - tol_value || psi(g, -1.0) >= best - tol_value)
        throw boundary_maximum_error(
            "find_global_maxima: global maximum attained at the boundary m = +-1");

    std::vector<double> maxima;
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.m < b.m; });
    for (const auto& c : candidates) {
        if (c.value < best - tol_value) continue;
        if (!maxima.empty() && std::abs(c.m - maxima.back()) < tol_sep) {
            if (psi(g, c.m) > psi(g, maxima.back())) maxima.back() = c.m;
            continue;
        }
        maxima.push_back(c.m);
    }

    // Even interactions have exactly symmetric maximizer sets; enforce the
    // symmetry so degenerate central maxima land on m = 0 exactly.
    if (g.is_even()) {
        std::vector<double> symmetric;
        std::vector<bool> used(maxima.size(), false);
        for (size_t i = 0; i < maxima.size(); ++i) {
            if (used[i]) continue;
            bool paired = false;
            for (size_t j = i + 1; j < maxima.size(); ++j) {
                if (used[j]) continue;
                if (std::abs(maxima[i] + maxima[j]) < tol_sep) {
                    const double a = 0.5 * (std::abs(maxima[i]) + std::abs(maxima[j]));
                    symmetric.push_back(-a);
                    symmetric.push_back(a);
                    used[i] = used[j] = true;
                    paired = true;
                    break;
                }
            }
            if (!paired) {
                used[i] = true;
                symmetric.push_back(std::abs(maxima[i]) < tol_sep ? 0.0 : maxima[i]);
            }
        }
        std::sort(symmetric.begin(), symmetric.end());
        maxima = std::move(symmetric);
    }
    return maxima;
}

TypeClassification classify_type(const Interaction& g, double m_star, double zero_tol) {
    if (std::abs(m_star) >= 1.0)
        throw std::invalid_argument("classify_type: interior maximizer required");
    const bool analytic = g.analytic_derivatives();
    double tol = zero_tol > 0.0 ? zero_tol : (analytic ? 1e-10 : 1e-6);

    std::vector<double> derivs(2 * kMaxType + 1, 0.0);
    for (int j = 1; j <= 2 * kMaxType; ++j) derivs[j] = psi_derivative(g, m_star, j);

    for (int j = 1; j <= 2 * kMaxType; ++j) {
        const double d = derivs[j];
        if (j % 2 == 1) {
            if (std::abs(d) > tol)
                throw classification_error("classify_type: odd derivative of order " +
                                           std::to_string(j) + " does not vanish");
            continue;
        }
        if (d < -tol) {
            TypeClassification result{j / 2, d, tol};
            if (zero_tol <= 0.0 && !analytic) {
                // Re-check the vanishing orders against the scaled tolerance.
                result.zero_tol = std::max(1e-6, 1e-4 * std::abs(d));
                for (int i = 1; i < j; ++i)
                    if (std::abs(derivs[i]) > result.zero_tol)
                        throw classification_error(
                            "classify_type: lower derivative exceeds scaled tolerance");
            }
            return result;
        }
        if (d > tol)
            throw classification_error("classify_type: positive even derivative of order " +
                                       std::to_string(j) + " at a maximizer");
    }
    throw classification_error("classify_type: type exceeds k_max = " + std::to_string(kMaxType));
}

double weight_w(const Interaction& g, const MaximizerRecord& record) {
    (void)g;
    const double m = record.m_star;
    const int k = record.type_k;
    if (k < 1) throw std::invalid_argument("weight_w: record must be classified");
    if (!(record.deriv_2k < 0.0)) throw std::invalid_argument("weight_w: deriv_2k must be negative");
    const double a = std::sqrt((1.0 + m) / 2.0);
    const double b = std::sqrt((1.0 - m) / 2.0);
    const double u = a + b;
    const double a1 = 2.0 * a / u;
    const double a2 = 2.0 * b / u;
    const double two_pi = 2.0 * std::numbers::pi;
    double fact_2k = 1.0;
    for (int i = 2; i <= 2 * k; ++i) fact_2k *= i;
    const double c_k = std::exp(-limiting_entropy_slice(m)) / std::sqrt(1.0 - m * m) *
                       std::sqrt(two_pi / a1) * std::sqrt(two_pi / a2) * 2.0 *
                       std::tgamma(1.0 + 1.0 / (2.0 * k)) * std::pow(fact_2k, 1.0 / (2.0 * k));
    return c_k / std::pow(std::abs(record.deriv_2k), 1.0 / (2.0 * k));
}

AnalysisResult analyze_interaction(const Interaction& g) {
    AnalysisResult result;
    const auto maxima = find_global_maxima(g);
    for (double m : maxima) {
        const auto type = classify_type(g, m);
        MaximizerRecord rec{m, type.k, type.deriv_2k, 0.0};
        rec.weight_w = weight_w(g, rec);
        result.maximizers.push_back(rec);
        result.maximal_type = std::max(result.maximal_type, type.k);
    }

    double total = 0.0;
    for (const auto& rec : result.maximizers)
        if (rec.type_k == result.maximal_type) total += rec.weight_w;
    for (const auto& rec : result.maximizers) {
        if (rec.type_k != result.maximal_type) continue;  // weight 0 in the limit
        MixtureComponent comp;
        comp.weight = rec.weight_w / total;
        comp.m_star = rec.m_star;
        comp.params = ensemble_map(interior_point(rec.m_star, 1.0));
        result.mixture.components.push_back(comp);
    }
    result.mixture.maximal_type = result.maximal_type;
    return result;
}

MixtureState limiting_mixture(const Interaction& g) { return analyze_interaction(g).mixture; }

RateFunction::RateFunction(const Interaction& g) : g_(g), sup_(-kInf) {
    constexpr int kGridPoints = 4097;
    double best_m = 0.0;
    for (int i = 0; i < kGridPoints; ++i) {
        const double m = -1.0 + 2.0 * i / (kGridPoints - 1);
        const double v = psi(g_, m);
        if (v > sup_) {
            sup_ = v;
            best_m = m;
        }
    }
    const double lo = std::max(-1.0, best_m - 2.0 / (kGridPoints - 1));
    const double hi = std::min(1.0, best_m + 2.0 / (kGridPoints - 1));
    const auto r = golden_max([&](double m) { return psi(g_, m); }, lo, hi, 1e-14);
    sup_ = std::max(sup_, r.value);
}

double RateFunction::operator()(double m) const {
    if (std::abs(m) > 1.0) return kInf;
    return std::max(0.0, sup_ - psi(g_, m));
}

double rate_function(const Interaction& g, double m) {
    if (std::abs(m) > 1.0) return kInf;
    return RateFunction(g)(m);
}

}  // namespace orthoplex
