#include "dconc/serialization.hpp"

#include <fstream>
#include <sstream>

namespace dconc {

namespace {

json complex_pairs(const Complex* data, std::size_t count) {
    json out = json::array();
    for (std::size_t i = 0; i < count; ++i) out.push_back({data[i].real(), data[i].imag()});
    return out;
}

std::size_t read_dim(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(key, "missing");
    const json& v = j.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned()) throw ParseError(key, "expected a positive integer");
    const auto value = v.get<long long>();
    if (value < 1) throw ParseError(key, "expected a positive integer, got " + std::to_string(value));
    return static_cast<std::size_t>(value);
}

std::vector<Complex> read_pairs(const json& j, const char* key, std::size_t expected) {
    if (!j.contains(key)) throw ParseError(key, "missing");
    const json& arr = j.at(key);
    if (!arr.is_array()) throw ParseError(key, "expected an array of [re, im] pairs");
    if (arr.size() != expected) {
        throw ParseError(key, "expected " + std::to_string(expected) + " entries, got " + std::to_string(arr.size()));
    }
    std::vector<Complex> out;
    out.reserve(expected);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& e = arr[i];
        const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw ParseError(where, "expected a [re, im] pair of numbers");
        }
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

} // namespace

json to_json(const DensityMatrix& rho) {
    const ComplexMatrix& m = rho.matrix();
    json entries = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
    return {{"dA", rho.dA()}, {"dB", rho.dB()}, {"matrix", entries}};
}

json to_json(const PureState& psi) {
    return {{"dA", psi.dA()},
            {"dB", psi.dB()},
            {"amplitudes", complex_pairs(psi.amplitudes().data(), static_cast<std::size_t>(psi.amplitudes().size()))}};
}

json to_json(const Decomposition& dec) {
    json members = json::array();
    for (const PureState& psi : dec.members) members.push_back(to_json(psi));
    return {{"weights", dec.weights}, {"members", members}};
}

json to_json(const RoofConfig& cfg) {
    json j = {{"restarts", cfg.restarts},
              {"max_iterations", cfg.max_iterations},
              {"step_tolerance", cfg.step_tolerance},
              {"value_tolerance", cfg.value_tolerance},
              {"rng_seed", cfg.rng_seed}};
    j["ensemble_size"] = cfg.ensemble_size ? json(*cfg.ensemble_size) : json("auto");
    return j;
}

json to_json(const RoofEstimate& est, const RoofConfig& cfg) {
    return {{"value", est.value},
            {"lower_bracket", est.lower_bracket},
            {"converged", est.converged},
            {"rank", est.rank},
            {"ensemble_size", est.ensemble_size},
            {"best_restart", est.best_restart},
            {"seed", cfg.rng_seed},
            {"config", to_json(cfg)},
            {"decomposition", to_json(est.decomposition)}};
}

DensityMatrix density_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("<root>", "expected a JSON object");
    const std::size_t dA = read_dim(j, "dA");
    const std::size_t dB = read_dim(j, "dB");
    const std::size_t n = dA * dB;
    const std::vector<Complex> entries = read_pairs(j, "matrix", n * n);
    ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < n; ++c) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = entries[i * n + c];
    return DensityMatrix(dA, dB, m);
}

PureState pure_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("<root>", "expected a JSON object");
    const std::size_t dA = read_dim(j, "dA");
    const std::size_t dB = read_dim(j, "dB");
    const std::vector<Complex> entries = read_pairs(j, "amplitudes", dA * dB);
    ComplexVector v(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries[i];
    return PureState(dA, dB, std::move(v));
}

StateFile parse_state(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("<root>", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("<root>", "expected a JSON object");
    if (j.contains("matrix")) return density_from_json(j);
    if (j.contains("amplitudes")) return pure_from_json(j);
    throw ParseError("matrix", "missing (or provide 'amplitudes' for a pure state)");
}

StateFile load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_state(buffer.str());
}

} // namespace dconc
