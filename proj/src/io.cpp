#include "lorentz/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lorentz {

static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

static bool looks_like_json(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '[' || c == '{';
    }
    return false;
}

std::vector<double> read_weight_file(const std::string& path) {
    const std::string text = slurp(path);
    std::vector<double> out;
    if (looks_like_json(text)) {
        auto j = nlohmann::json::parse(text);
        if (!j.is_array()) throw std::invalid_argument("weight file: expected a JSON array");
        for (const auto& v : j) out.push_back(v.get<double>());
    } else {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            out.push_back(std::stod(line));
        }
    }
    if (out.empty()) throw std::invalid_argument("weight file: no values in " + path);
    return out;
}

std::vector<std::vector<double>> read_point_file(const std::string& path) {
    const std::string text = slurp(path);
    std::vector<std::vector<double>> out;
    if (looks_like_json(text)) {
        auto j = nlohmann::json::parse(text);
        if (!j.is_array()) throw std::invalid_argument("point file: expected a JSON array");
        for (const auto& row : j) {
            std::vector<double> p;
            for (const auto& v : row) p.push_back(v.get<double>());
            out.push_back(std::move(p));
        }
    } else {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            std::vector<double> p;
            std::istringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ',')) p.push_back(std::stod(cell));
            out.push_back(std::move(p));
        }
    }
    if (out.empty()) throw std::invalid_argument("point file: no rows in " + path);
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream outf(path);
    if (!outf) throw std::invalid_argument("cannot write file: " + path);
    outf << content;
}

}  // namespace lorentz
