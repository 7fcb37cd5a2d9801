#include "silverforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace silverforge {

namespace {

std::string format_complex(const cplx& z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", z.real(), z.imag());
    return buf;
}

cplx parse_complex(const std::string& tok) {
    const char* p = tok.c_str();
    char* end = nullptr;
    const double re = std::strtod(p, &end);
    if (end == p) throw ConfigInvalid("matrix text: bad complex entry '" + tok + "'");
    double im = 0.0;
    if (*end != '\0') {
        const char* q = end;
        im = std::strtod(q, &end);
        if (end == q || *end != 'j' || *(end + 1) != '\0')
            throw ConfigInvalid("matrix text: bad complex entry '" + tok + "'");
    }
    return {re, im};
}

} // namespace

void write_complex_matrix(std::ostream& os, const CMat& M) {
    os << M.rows() << ' ' << M.cols() << '\n';
    for (int r = 0; r < M.rows(); ++r) {
        for (int c = 0; c < M.cols(); ++c) {
            if (c) os << ' ';
            os << format_complex(M(r, c));
        }
        os << '\n';
    }
}

CMat read_complex_matrix(std::istream& is) {
    int rows = 0, cols = 0;
    if (!(is >> rows >> cols) || rows <= 0 || cols <= 0)
        throw ConfigInvalid("matrix text: missing or invalid header");
    CMat M(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            std::string tok;
            if (!(is >> tok)) throw ConfigInvalid("matrix text: truncated entry list");
            M(r, c) = parse_complex(tok);
        }
    return M;
}

void write_real_matrix(std::ostream& os, const RMat& M) {
    os << M.rows() << ' ' << M.cols() << '\n';
    char buf[32];
    for (int r = 0; r < M.rows(); ++r) {
        for (int c = 0; c < M.cols(); ++c) {
            if (c) os << ' ';
            std::snprintf(buf, sizeof(buf), "%.17g", M(r, c));
            os << buf;
        }
        os << '\n';
    }
}

RMat read_real_matrix(std::istream& is) {
    int rows = 0, cols = 0;
    if (!(is >> rows >> cols) || rows <= 0 || cols <= 0)
        throw ConfigInvalid("matrix text: missing or invalid header");
    RMat M(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (!(is >> M(r, c))) throw ConfigInvalid("matrix text: truncated entry list");
    return M;
}

SimulationConfig parse_config_stream(std::istream& is) {
    SimulationConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // Accept "key value", "key = value", and comma-separated lists alike.
        for (char& c : line)
            if (c == '=' || c == ',') c = ' ';
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        const std::string where = " (config line " + std::to_string(lineno) + ")";
        if (key == "nt") {
            if (!(ls >> cfg.nt)) throw ConfigInvalid("nt: expected integer" + where);
        } else if (key == "nr") {
            if (!(ls >> cfg.nr)) throw ConfigInvalid("nr: expected integer" + where);
        } else if (key == "code") {
            if (!(ls >> cfg.code)) throw ConfigInvalid("code: expected name" + where);
        } else if (key == "M") {
            if (!(ls >> cfg.M)) throw ConfigInvalid("M: expected integer" + where);
        } else if (key == "snr_db") {
            cfg.snr_db.clear();
            double v;
            while (ls >> v) cfg.snr_db.push_back(v);
            if (cfg.snr_db.empty()) throw ConfigInvalid("snr_db: expected list of reals" + where);
        } else if (key == "trials") {
            if (!(ls >> cfg.trials)) throw ConfigInvalid("trials: expected integer" + where);
        } else if (key == "target_errors") {
            if (!(ls >> cfg.target_errors))
                throw ConfigInvalid("target_errors: expected integer" + where);
        } else if (key == "seed") {
            if (!(ls >> cfg.seed)) throw ConfigInvalid("seed: expected integer" + where);
            cfg.seed_set = true;
        } else if (key == "phase_deg") {
            if (!(ls >> cfg.phase_deg)) throw ConfigInvalid("phase_deg: expected real" + where);
            cfg.phase_set = true;
        } else if (key == "output") {
            if (!(ls >> cfg.output)) throw ConfigInvalid("output: expected path" + where);
        } else {
            throw ConfigInvalid("unknown config key '" + key + "'" + where);
        }
    }
    return cfg;
}

SimulationConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigInvalid("cannot open config file: " + path);
    return parse_config_stream(f);
}

void validate_config(const SimulationConfig& cfg) {
    if (cfg.nt != 2 && cfg.nt != 4 && cfg.nt != 8 && cfg.nt != 16)
        throw ConfigInvalid("nt: must be one of {2,4,8,16}, got " + std::to_string(cfg.nt));
    if (cfg.nr < 1) throw ConfigInvalid("nr: must be >= 1, got " + std::to_string(cfg.nr));
    if (cfg.code != "silver" && cfg.code != "none")
        throw ConfigInvalid("code: must be 'silver' or 'none', got '" + cfg.code + "'");
    const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(cfg.M))));
    if (cfg.M < 4 || root * root != cfg.M)
        throw ConfigInvalid("M: must be a perfect square >= 4, got " + std::to_string(cfg.M));
    if (cfg.trials < 0) throw ConfigInvalid("trials: must be >= 0");
    if (cfg.target_errors < 0) throw ConfigInvalid("target_errors: must be >= 0");
    if (cfg.target_errors > 0 && cfg.target_errors < 100)
        throw ConfigInvalid("target_errors: minimum error-event stopping rule is 100");
}

} // namespace silverforge
