#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mcfa/rkhs.hpp"

namespace mcfa {

// flat key=value lines; '#' starts a comment, blank lines ignored
inline std::map<std::string, std::string> parse_flat_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            bool blank = true;
            for (char c : line) blank &= std::isspace(static_cast<unsigned char>(c)) != 0;
            if (blank) continue;
            throw std::invalid_argument("config: expected key=value, got '" + line + "'");
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

// Kernel parameter files: kind, d, r, beta0, L.
struct KernelFileParams {
    std::string kind;  // "korobov" (periodic-lambda weights) or "wiener-sheet"
    int d = 1;
    double r = 2.0;
    double beta0 = 0.5;
    int L = 4096;
};

inline KernelFileParams load_kernel_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open kernel file: " + path);
    auto kv = parse_flat_config(in);
    KernelFileParams p;
    for (const auto& [key, value] : kv) {
        if (key == "kind")
            p.kind = value;
        else if (key == "d")
            p.d = std::stoi(value);
        else if (key == "r")
            p.r = std::stod(value);
        else if (key == "beta0")
            p.beta0 = std::stod(value);
        else if (key == "L")
            p.L = std::stoi(value);
        else
            throw std::invalid_argument("kernel file: unknown key '" + key + "'");
    }
    if (p.kind.empty()) throw std::invalid_argument("kernel file: missing kind");
    return p;
}

inline rkhs::KernelHandle kernel_from_params(const KernelFileParams& p) {
    if (p.kind == "korobov")
        return rkhs::KernelHandle::periodic(rkhs::korobov_lambda(p.r, p.beta0, p.L), p.d);
    if (p.kind == "wiener-sheet") return rkhs::KernelHandle::wiener_sheet(p.d);
    throw std::invalid_argument("kernel file: unknown kind '" + p.kind + "'");
}

} // namespace mcfa
