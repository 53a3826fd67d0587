#pragma once

#include "sentivol/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

// Derived social and financial variables on a SymbolPanel, including the
// PCA-compressed social signal.
namespace sentivol::features {

// Derived column names
inline constexpr const char* kTr = "TR";
inline constexpr const char* kLogTrDiff = "LOG_TR_DIFF";
inline constexpr const char* kLogReturn = "LOG_RETURN";
inline constexpr const char* kBullMinusBear = "BULL_MINUS_BEAR";
inline constexpr const char* kPcaSocial = "PCA_SOCIAL";
inline constexpr const char* kPcaSocialChange = "PCA_SOCIAL_CHANGE";

/// verbatim follows the printed True Range formula; absolute is the standard
/// Wilder form with absolute gap terms. They differ only on gap days.
enum class TrMode { verbatim, absolute };

inline TrMode tr_mode_from_string(const std::string& s) {
    if (s == "verbatim") return TrMode::verbatim;
    if (s == "absolute") return TrMode::absolute;
    throw config_error("unknown TR mode: " + s);
}

inline double true_range(double high, double low, double close_prev, TrMode mode) {
    if (!(high > 0.0) || !(low > 0.0) || !(close_prev > 0.0))
        throw domain_error("true_range: prices must be positive");
    if (high < low) throw domain_error("true_range: high < low");
    const double range = high - low;
    if (mode == TrMode::verbatim)
        return std::max({range, low - close_prev, high - close_prev});
    return std::max({range, std::abs(low - close_prev), std::abs(high - close_prev)});
}

/// Day-over-day log-ratio of TR with an additive floor for TR = 0 days.
/// First element undefined.
inline std::vector<double> log_tr_diff(const std::vector<double>& tr, double eps = 1e-8) {
    if (tr.size() < 2) throw domain_error("log_tr_diff: need at least 2 values");
    for (double v : tr)
        if (!std::isfinite(v) || v < 0.0) throw domain_error("log_tr_diff: TR must be finite and >= 0");
    std::vector<double> out(tr.size(), kUndefined);
    for (std::size_t t = 1; t < tr.size(); ++t)
        out[t] = std::log((tr[t] + eps) / (tr[t - 1] + eps));
    return out;
}

/// ln(close_t / close_{t-1}); first element undefined.
inline std::vector<double> log_return(const std::vector<double>& closes) {
    if (closes.size() < 2) throw domain_error("log_return: need at least 2 values");
    for (double v : closes)
        if (!(v > 0.0) || !std::isfinite(v)) throw domain_error("log_return: closes must be positive");
    std::vector<double> out(closes.size(), kUndefined);
    for (std::size_t t = 1; t < closes.size(); ++t) out[t] = std::log(closes[t] / closes[t - 1]);
    return out;
}

inline double bull_minus_bear(const SentimentDaily& row) {
    return row.bullish_intensity - row.bearish_intensity;
}

inline const std::vector<std::string>& default_pca_features() {
    static const std::vector<std::string> names{
        "BULLISH_INTENSITY",     "BEARISH_INTENSITY",     "BULL_SCORED_MESSAGES",
        "BEAR_SCORED_MESSAGES",  "TOTAL_SCANNED_MESSAGES"};
    return names;
}

/// Raw or derived column of a panel by name.
inline std::vector<double> feature_column(const SymbolPanel& panel, const std::string& name) {
    std::vector<double> out;
    out.reserve(panel.size());
    if (name == "BULLISH_INTENSITY") {
        for (const auto& r : panel.social) out.push_back(r.bullish_intensity);
    } else if (name == "BEARISH_INTENSITY") {
        for (const auto& r : panel.social) out.push_back(r.bearish_intensity);
    } else if (name == "BULL_SCORED_MESSAGES") {
        for (const auto& r : panel.social) out.push_back(static_cast<double>(r.bull_scored_messages));
    } else if (name == "BEAR_SCORED_MESSAGES") {
        for (const auto& r : panel.social) out.push_back(static_cast<double>(r.bear_scored_messages));
    } else if (name == "TOTAL_SCANNED_MESSAGES") {
        for (const auto& r : panel.social) out.push_back(static_cast<double>(r.total_scanned_messages));
    } else if (name == "OPEN") {
        for (const auto& r : panel.financial) out.push_back(r.open);
    } else if (name == "HIGH") {
        for (const auto& r : panel.financial) out.push_back(r.high);
    } else if (name == "LOW") {
        for (const auto& r : panel.financial) out.push_back(r.low);
    } else if (name == "CLOSE") {
        for (const auto& r : panel.financial) out.push_back(r.close);
    } else if (name == "VOLUME") {
        for (const auto& r : panel.financial) out.push_back(static_cast<double>(r.volume));
    } else {
        return panel.derived_column(name);
    }
    return out;
}

struct PcaModel {
    std::vector<std::string> feature_names;
    std::vector<double> mean;  // per feature
    std::vector<double> sd;    // per feature; 0 marks a constant column (zeroed)
    std::vector<double> loadings;                  // first principal axis, unit norm
    std::vector<double> eigenvalues;               // descending, of the correlation matrix
    std::vector<double> explained_variance_ratio;  // retained components only
    std::vector<double> scores;                    // per date
    std::vector<std::string> warnings;
};

/// First principal component of the z-scored feature columns. Standardization
/// uses population moments (denominator n); constant columns map to all-zeros
/// and are reported. Sign convention: the first largest-magnitude loading
/// entry is positive.
inline PcaModel fit_social_pca(const SymbolPanel& panel, const std::vector<std::string>& names) {
    const std::size_t p = names.size();
    const std::size_t n = panel.size();
    if (p < 2) throw domain_error("fit_social_pca: need at least 2 features");
    if (n < p + 1) throw domain_error("fit_social_pca: need at least |features|+1 observations");

    PcaModel model;
    model.feature_names = names;
    Eigen::MatrixXd z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    std::size_t constant_cols = 0;
    for (std::size_t j = 0; j < p; ++j) {
        auto col = feature_column(panel, names[j]);
        for (double v : col)
            if (!std::isfinite(v)) throw domain_error("fit_social_pca: non-finite value in " + names[j]);
        double mean = 0.0;
        for (double v : col) mean += v;
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (double v : col) var += (v - mean) * (v - mean);
        var /= static_cast<double>(n);
        const double sd = std::sqrt(var);
        model.mean.push_back(mean);
        model.sd.push_back(sd);
        if (sd == 0.0) {
            ++constant_cols;
            model.warnings.push_back("constant PCA feature zeroed: " + names[j]);
            for (std::size_t t = 0; t < n; ++t) z(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = 0.0;
        } else {
            for (std::size_t t = 0; t < n; ++t)
                z(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = (col[t] - mean) / sd;
        }
    }
    if (constant_cols == p) throw domain_error("fit_social_pca: all feature columns constant");

    const Eigen::MatrixXd corr = (z.transpose() * z) / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(corr);
    if (solver.info() != Eigen::Success) throw error("fit_social_pca: eigendecomposition failed");

    const auto& evals = solver.eigenvalues();  // ascending
    double total = 0.0;
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        model.eigenvalues.push_back(std::max(0.0, evals(evals.size() - 1 - i)));
        total += model.eigenvalues.back();
    }
    model.explained_variance_ratio.push_back(model.eigenvalues.front() / total);

    Eigen::VectorXd v = solver.eigenvectors().col(evals.size() - 1);
    v.normalize();
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(pivot))) pivot = i;
    if (v(pivot) < 0.0) v = -v;
    model.loadings.assign(v.data(), v.data() + v.size());

    model.scores.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        double s = 0.0;
        for (std::size_t j = 0; j < p; ++j)
            s += z(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) * model.loadings[j];
        model.scores[t] = s;
    }
    return model;
}

/// First difference of the component score series; first element undefined.
inline std::vector<double> pca_social_change(const PcaModel& model) {
    if (model.scores.size() < 2) throw domain_error("pca_social_change: need at least 2 scores");
    std::vector<double> out(model.scores.size(), kUndefined);
    for (std::size_t t = 1; t < model.scores.size(); ++t)
        out[t] = model.scores[t] - model.scores[t - 1];
    return out;
}

struct FeatureConfig {
    TrMode tr_mode = TrMode::verbatim;
    double log_tr_eps = 1e-8;
    std::vector<std::string> pca_features = default_pca_features();
};

struct DeriveResult {
    SymbolPanel panel;
    PcaModel pca;
};

/// Populates every derived column. The first panel day has no prior close, so
/// TR there is the plain high-low range; one-lag consumers stay undefined at
/// index 0.
inline DeriveResult derive_all(const SymbolPanel& input, const FeatureConfig& cfg = {}) {
    if (input.size() < 2) throw domain_error("derive_all: panel too short to difference");

    DeriveResult result;
    result.panel = input;
    SymbolPanel& panel = result.panel;
    const std::size_t n = panel.size();

    std::vector<double> tr(n);
    tr[0] = panel.financial[0].high - panel.financial[0].low;
    for (std::size_t t = 1; t < n; ++t)
        tr[t] = true_range(panel.financial[t].high, panel.financial[t].low,
                           panel.financial[t - 1].close, cfg.tr_mode);
    panel.derived[kTr] = tr;
    panel.derived[kLogTrDiff] = log_tr_diff(tr, cfg.log_tr_eps);

    std::vector<double> closes;
    closes.reserve(n);
    for (const auto& q : panel.financial) closes.push_back(q.close);
    panel.derived[kLogReturn] = log_return(closes);

    std::vector<double> bmb;
    bmb.reserve(n);
    for (const auto& s : panel.social) bmb.push_back(bull_minus_bear(s));
    panel.derived[kBullMinusBear] = bmb;

    result.pca = fit_social_pca(panel, cfg.pca_features);
    panel.derived[kPcaSocial] = result.pca.scores;
    panel.derived[kPcaSocialChange] = pca_social_change(result.pca);
    return result;
}

}  // namespace sentivol::features
