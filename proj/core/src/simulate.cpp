#include "specshrink/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/random/normal_distribution.hpp>

#include "specshrink/errors.hpp"
#include "specshrink/parallel.hpp"
#include "specshrink/philox.hpp"
#include "specshrink/summation.hpp"

namespace specshrink {

namespace {

constexpr std::int64_t kEigenLimit = 2000;

std::uint32_t design_stream(std::int64_t rep) { return static_cast<std::uint32_t>(2 * rep); }
std::uint32_t noise_stream(std::int64_t rep) { return static_cast<std::uint32_t>(2 * rep + 1); }

Eigen::VectorXd normal_vector(std::int64_t size, double scale, Philox4x32& gen) {
    boost::random::normal_distribution<double> normal;
    Eigen::VectorXd v(size);
    for (std::int64_t i = 0; i < size; ++i) v[i] = scale * normal(gen);
    return v;
}

std::string format_param(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

struct Moments {
    double mean = 0.0;
    double se = 0.0;
};

Moments moments(const std::vector<double>& xs) {
    CompensatedSum sum;
    for (double x : xs) sum.add(x);
    const double n = static_cast<double>(xs.size());
    const double mean = sum.value() / n;
    if (xs.size() < 2) return {mean, 0.0};
    CompensatedSum ss;
    for (double x : xs) ss.add((x - mean) * (x - mean));
    return {mean, std::sqrt(ss.value() / (n - 1.0) / n)};
}

}  // namespace

double SimConfig::lambda_star() const {
    return sigma * sigma * static_cast<double>(d) / (psi * static_cast<double>(n));
}

void SimConfig::validate() const {
    if (n < 1 || d < 1) throw ArgumentError("simulation requires n, d >= 1");
    if (!(alpha >= 0.0)) throw ArgumentError("simulation requires alpha >= 0");
    if (!(sigma > 0.0) || !(psi > 0.0)) throw ArgumentError("simulation requires sigma, psi > 0");
    if (k < 2) throw ArgumentError("simulation requires k >= 2");
    if (!(eta > 0.0)) throw ArgumentError("simulation requires eta > 0");
    if (!(lambda_min >= 0.0 && lambda_min < 1.0)) throw ArgumentError("simulation requires lambda_min in [0, 1)");
    if (replications < 1) throw ArgumentError("simulation requires replications >= 1");
}

std::vector<double> fig3_lambda_stars(std::int64_t points) {
    if (points < 1) throw ArgumentError("points must be >= 1");
    std::vector<double> out;
    for (std::int64_t i = 0; i < points; ++i) {
        const double e = points == 1 ? 1.6 : 1.6 + static_cast<double>(i) / static_cast<double>(points - 1);
        out.push_back(std::pow(10.0, e) / 400.0);
    }
    return out;
}

SimConfig fig3_preset(std::int64_t n, std::int64_t d, double alpha, double lambda_star, std::int64_t replications,
                      std::uint64_t seed) {
    SimConfig cfg;
    cfg.n = n;
    cfg.d = d;
    cfg.alpha = alpha;
    cfg.psi = 10.0;
    cfg.sigma = std::sqrt(lambda_star * cfg.psi * static_cast<double>(n) / static_cast<double>(d));
    cfg.eta = 1.0;
    cfg.k = 10;
    cfg.lambda_min = 0.99 * std::pow(10.0, 1.6) / 400.0;
    cfg.replications = replications;
    cfg.seed = seed;
    cfg.beta_mode = BetaMode::FixedOnes;
    cfg.ridge_grid = RidgeGridMode::Bracket;
    return cfg;
}

std::vector<double> sim_ridge_grid(const SimConfig& cfg) {
    cfg.validate();
    const double delta = (1.0 - cfg.lambda_min) / static_cast<double>(cfg.k - 1);
    std::vector<double> grid;
    for (std::int64_t j = 0; j < cfg.k; ++j) grid.push_back(cfg.lambda_min + static_cast<double>(j) * delta);
    if (cfg.ridge_grid == RidgeGridMode::Uniform) return grid;
    const double lam = cfg.lambda_star();
    std::vector<double> bracket;
    if (lam - delta > 0.0) bracket.push_back(lam - delta);
    bracket.push_back(lam + delta);
    return bracket;
}

Eigen::MatrixXd sample_design(std::int64_t n, std::int64_t d, double alpha, std::uint64_t seed, std::uint32_t stream) {
    Philox4x32 gen(seed, stream);
    boost::random::normal_distribution<double> normal;
    Eigen::VectorXd scale(d);
    for (std::int64_t j = 0; j < d; ++j) scale[j] = std::pow(static_cast<double>(j + 1), -alpha / 2.0);
    Eigen::MatrixXd x(n, d);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < d; ++j) x(i, j) = scale[j] * normal(gen);
    return x;
}

std::vector<Eigen::VectorXd> gd_iterates(const Eigen::MatrixXd& s_hat, const Eigen::VectorXd& g, double eta,
                                         std::int64_t k) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(static_cast<std::size_t>(k));
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(g.size());
    for (std::int64_t t = 0; t < k; ++t) {
        beta += eta * (g - s_hat * beta);
        out.push_back(beta);
    }
    return out;
}

SimResult run_sim(const SimConfig& cfg) {
    cfg.validate();
    const auto ridge = sim_ridge_grid(cfg);
    const double lam_star = cfg.lambda_star();
    const auto members = static_cast<std::size_t>(cfg.k) + ridge.size();
    const auto reps = static_cast<std::size_t>(cfg.replications);
    std::vector<std::vector<double>> excess(members, std::vector<double>(reps));
    const double inv_n = 1.0 / static_cast<double>(cfg.n);

    parallel_for(cfg.replications, [&](std::int64_t rep) {
        const Eigen::MatrixXd x = sample_design(cfg.n, cfg.d, cfg.alpha, cfg.seed, design_stream(rep));
        Philox4x32 gen(cfg.seed, noise_stream(rep));
        Eigen::VectorXd beta;
        if (cfg.beta_mode == BetaMode::FixedOnes)
            beta = Eigen::VectorXd::Constant(cfg.d, std::sqrt(cfg.psi / static_cast<double>(cfg.d)));
        else
            beta = normal_vector(cfg.d, std::sqrt(cfg.psi / static_cast<double>(cfg.d)), gen);
        const Eigen::VectorXd y = x * beta + normal_vector(cfg.n, cfg.sigma, gen);
        const Eigen::MatrixXd s_hat = (x.transpose() * x) * inv_n;
        const Eigen::VectorXd g = (x.transpose() * y) * inv_n;
        std::vector<double> loss(members);
        double ref = 0.0;
        if (cfg.d <= kEigenLimit) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s_hat);
            const Eigen::VectorXd ev = es.eigenvalues();
            const Eigen::VectorXd z = es.eigenvectors().transpose() * g;
            const Eigen::VectorXd b = es.eigenvectors().transpose() * beta;
            Eigen::VectorXd u = Eigen::VectorXd::Zero(cfg.d);
            for (std::int64_t t = 0; t < cfg.k; ++t) {
                u.array() += cfg.eta * (z.array() - ev.array() * u.array());
                loss[static_cast<std::size_t>(t)] = (u - b).squaredNorm();
            }
            const auto ridge_loss = [&](double lam) {
                return (z.array() / (ev.array() + lam) - b.array()).matrix().squaredNorm();
            };
            for (std::size_t j = 0; j < ridge.size(); ++j) loss[static_cast<std::size_t>(cfg.k) + j] = ridge_loss(ridge[j]);
            ref = ridge_loss(lam_star);
        } else {
            const auto iters = gd_iterates(s_hat, g, cfg.eta, cfg.k);
            for (std::int64_t t = 0; t < cfg.k; ++t)
                loss[static_cast<std::size_t>(t)] = (iters[static_cast<std::size_t>(t)] - beta).squaredNorm();
            const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(cfg.d, cfg.d);
            const auto ridge_loss = [&](double lam) {
                Eigen::LLT<Eigen::MatrixXd> llt(s_hat + lam * eye);
                return (llt.solve(g) - beta).squaredNorm();
            };
            for (std::size_t j = 0; j < ridge.size(); ++j) loss[static_cast<std::size_t>(cfg.k) + j] = ridge_loss(ridge[j]);
            ref = ridge_loss(lam_star);
        }
        for (std::size_t m = 0; m < members; ++m) excess[m][static_cast<std::size_t>(rep)] = loss[m] - ref;
    });

    SimResult out;
    out.lambda_star = lam_star;
    for (std::size_t m = 0; m < members; ++m) {
        SimRow row;
        row.is_gd = m < static_cast<std::size_t>(cfg.k);
        row.parameter = row.is_gd ? static_cast<double>(m + 1) : ridge[m - static_cast<std::size_t>(cfg.k)];
        row.estimator_id = row.is_gd ? "gd_t=" + std::to_string(m + 1) : "ridge_lambda=" + format_param(row.parameter);
        row.finite = std::all_of(excess[m].begin(), excess[m].end(), [](double v) { return std::isfinite(v); });
        if (row.finite) {
            const auto mo = moments(excess[m]);
            row.mean_excess = mo.mean;
            row.std_error = mo.se;
        } else {
            row.mean_excess = std::numeric_limits<double>::infinity();
            row.std_error = std::numeric_limits<double>::quiet_NaN();
        }
        out.rows.push_back(row);
    }
    for (std::size_t m = 0; m < members; ++m) {
        const auto& row = out.rows[m];
        if (!row.finite) continue;
        auto& best = row.is_gd ? out.best_gd : out.best_ridge;
        if (best < 0 || row.mean_excess < out.rows[static_cast<std::size_t>(best)].mean_excess)
            best = static_cast<std::int64_t>(m);
    }
    if (out.best_gd >= 0 && out.best_ridge >= 0)
        out.ratio = out.rows[static_cast<std::size_t>(out.best_gd)].mean_excess /
                    out.rows[static_cast<std::size_t>(out.best_ridge)].mean_excess;
    else
        out.ratio = std::numeric_limits<double>::quiet_NaN();
    return out;
}

std::vector<MemberEstimate> simulate_fixed_design(const Eigen::MatrixXd& x, const std::vector<Shrinker>& members,
                                                  double sigma, double psi, std::int64_t replications,
                                                  std::uint64_t seed) {
    if (replications < 1) throw ArgumentError("replications must be >= 1");
    if (!(sigma > 0.0) || !(psi > 0.0)) throw ArgumentError("sigma and psi must be positive");
    for (const auto& m : members) validate(m);
    const auto n = x.rows();
    const auto d = x.cols();
    const double inv_n = 1.0 / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es((x.transpose() * x) * inv_n);
    const Eigen::MatrixXd& v = es.eigenvectors();
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    const double lam_star = sigma * sigma * static_cast<double>(d) / (psi * static_cast<double>(n));
    std::vector<Eigen::VectorXd> filters;
    for (const auto& m : members) {
        Eigen::VectorXd f(d);
        for (Eigen::Index i = 0; i < d; ++i) f[i] = phi_value(m, ev[i]);
        filters.push_back(f);
    }
    Eigen::VectorXd ref_filter(d);
    for (Eigen::Index i = 0; i < d; ++i) ref_filter[i] = 1.0 / (ev[i] + lam_star);
    const auto reps = static_cast<std::size_t>(replications);
    std::vector<std::vector<double>> excess(members.size(), std::vector<double>(reps));
    parallel_for(replications, [&](std::int64_t rep) {
        Philox4x32 gen(seed, static_cast<std::uint32_t>(rep));
        const Eigen::VectorXd beta = normal_vector(d, std::sqrt(psi / static_cast<double>(d)), gen);
        const Eigen::VectorXd y = x * beta + normal_vector(n, sigma, gen);
        const Eigen::VectorXd z = v.transpose() * ((x.transpose() * y) * inv_n);
        const Eigen::VectorXd b = v.transpose() * beta;
        const double ref = (ref_filter.cwiseProduct(z) - b).squaredNorm();
        for (std::size_t m = 0; m < members.size(); ++m)
            excess[m][static_cast<std::size_t>(rep)] = (filters[m].cwiseProduct(z) - b).squaredNorm() - ref;
    });
    std::vector<MemberEstimate> out;
    for (const auto& e : excess) {
        const auto mo = moments(e);
        out.push_back({mo.mean, mo.se});
    }
    return out;
}

Spectrum empirical_spectrum(const Eigen::MatrixXd& x) {
    if (!x.allFinite()) throw ArgumentError("design must be finite");
    const auto n = x.rows();
    const auto d = x.cols();
    if (n < 1 || d < 1) throw ArgumentError("design must be non-empty");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es((x.transpose() * x) / static_cast<double>(n),
                                                      Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + d);
    std::sort(ev.begin(), ev.end(), std::greater<>());
    const double cut = 1e-12 * ev.front();
    std::vector<double> kept;
    for (double e : ev)
        if (e >= cut && e > 0.0 && static_cast<std::int64_t>(kept.size()) < std::min(n, d)) kept.push_back(e);
    return Spectrum::explicit_values(std::move(kept), d);
}

}  // namespace specshrink
