#pragma once

#include <complex>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fixtures {

struct Entry {
    std::complex<double> value;
    std::string params;
};

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(' ');
    const auto e = s.find_last_not_of(' ');
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// name | re | im | parameters | oracle
inline const std::map<std::string, Entry>& oracles() {
    static const std::map<std::string, Entry> table = [] {
        std::map<std::string, Entry> out;
        std::ifstream in(std::string(FIXTURE_DIR) + "/oracles.txt");
        if (!in) throw std::runtime_error("missing oracles.txt");
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::stringstream ss(line);
            std::string cell[5];
            for (auto& c : cell) {
                std::getline(ss, c, '|');
                c = trim(c);
            }
            out[cell[0]] = Entry{{std::stod(cell[1]), std::stod(cell[2])}, cell[3]};
        }
        return out;
    }();
    return table;
}

inline std::complex<double> oracle(const std::string& name) {
    const auto it = oracles().find(name);
    if (it == oracles().end()) throw std::runtime_error("unknown fixture " + name);
    return it->second.value;
}

inline double rel_err(std::complex<double> got, std::complex<double> want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace fixtures
