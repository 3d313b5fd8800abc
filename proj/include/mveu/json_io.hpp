#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "mveu/capm.hpp"
#include "mveu/common.hpp"
#include "mveu/distributions.hpp"
#include "mveu/frontier.hpp"
#include "mveu/utility.hpp"

// JSON wire formats shared by the CLI and any embedding code:
//   DiscreteAsset  {"outcomes": [{"x": number, "p": number}, ...]}
//   NormalAsset    {"mu": number, "sigma": number}
//   UtilitySpec    {"family": "quadratic"|"cara"|"log"|"tabulated",
//                   "a": n, "kappa": n, "points": [[x, u], ...]}
//   AssetUniverse  {"means": [...], "cov": [[...]], "labels": [...]}
//   MarketModel    {"r_rf": n, "value_means": [...], "value_cov": [[...]],
//                   "market_price": n, "prices": [...]?}

namespace mveu {

inline nlohmann::json to_json(const DiscreteAsset& asset) {
    nlohmann::json outcomes = nlohmann::json::array();
    for (const auto& o : asset.outcomes())
        outcomes.push_back({{"x", o.payoff}, {"p", o.probability}});
    return {{"outcomes", outcomes}};
}

inline DiscreteAsset discrete_asset_from_json(const nlohmann::json& j) {
    if (!j.contains("outcomes") || !j["outcomes"].is_array())
        throw domain_error("asset JSON: missing \"outcomes\" array");
    std::vector<Outcome> outcomes;
    for (const auto& o : j["outcomes"])
        outcomes.push_back({o.at("x").get<double>(), o.at("p").get<double>()});
    return DiscreteAsset(std::move(outcomes));
}

inline nlohmann::json to_json(const NormalAsset& asset) {
    return {{"mu", asset.mu}, {"sigma", asset.sigma}};
}

inline NormalAsset normal_asset_from_json(const nlohmann::json& j) {
    return NormalAsset(j.at("mu").get<double>(), j.at("sigma").get<double>());
}

inline nlohmann::json to_json(const MomentPair& m) {
    return {{"mu", m.mu}, {"sigma", m.sigma}};
}

inline nlohmann::json to_json(const UtilitySpec& u) {
    return u.visit([](const auto& fam) -> nlohmann::json {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, Quadratic>)
            return {{"family", "quadratic"}, {"a", fam.a}};
        else if constexpr (std::is_same_v<T, Cara>)
            return {{"family", "cara"}, {"kappa", fam.kappa}};
        else if constexpr (std::is_same_v<T, LogUtility>)
            return {{"family", "log"}};
        else
            return {{"family", "tabulated"}, {"points", fam.points}};
    });
}

inline UtilitySpec utility_spec_from_json(const nlohmann::json& j) {
    const std::string family = j.at("family").get<std::string>();
    if (family == "quadratic") return UtilitySpec::quadratic(j.at("a").get<double>());
    if (family == "cara") return UtilitySpec::cara(j.at("kappa").get<double>());
    if (family == "log") return UtilitySpec::log_utility();
    if (family == "tabulated")
        return UtilitySpec::tabulated(
            j.at("points").get<std::vector<std::pair<double, double>>>());
    throw domain_error("utility JSON: unknown family \"" + family + "\"");
}

inline Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                             static_cast<Eigen::Index>(values.size()));
}

inline Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    const auto rows = j.get<std::vector<std::vector<double>>>();
    if (rows.empty()) throw domain_error("matrix JSON: empty");
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size())
            throw domain_error("matrix JSON: ragged rows");
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    return m;
}

inline nlohmann::json to_json(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

inline AssetUniverse asset_universe_from_json(const nlohmann::json& j) {
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return AssetUniverse(vector_from_json(j.at("means")), matrix_from_json(j.at("cov")),
                         std::move(labels));
}

inline MarketModel market_model_from_json(const nlohmann::json& j) {
    std::optional<Eigen::VectorXd> prices;
    if (j.contains("prices")) prices = vector_from_json(j["prices"]);
    return MarketModel(j.at("r_rf").get<double>(), vector_from_json(j.at("value_means")),
                       matrix_from_json(j.at("value_cov")),
                       j.at("market_price").get<double>(), std::move(prices));
}

}  // namespace mveu
