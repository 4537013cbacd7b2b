#pragma once

#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "speckit/errors.hpp"
#include "speckit/grid.hpp"
#include "speckit/point_set.hpp"
#include "speckit/types.hpp"

namespace speckit {

namespace detail {

/// 17 significant digits: enough for an exact double round trip.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string now_iso8601() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace detail

/// One evaluated grid point: location, scalar field value, membership flag.
struct RegionSample {
    Complex z;
    double value = 0.0;
    bool member = false;
};

/// Run metadata carried with every region: the producing algorithm's name
/// and every tolerance/truncation parameter that influenced the values.
struct RegionMeta {
    std::string algorithm;
    nlohmann::json params = nlohmann::json::object();
    std::string timestamp = detail::now_iso8601();
};

/// Finite grid of membership samples, the serializable output of every
/// set-valued computation.
struct RegionEstimate {
    GridSpec grid;
    std::vector<RegionSample> samples;
    RegionMeta meta;

    PointSet member_points() const {
        std::vector<Complex> pts;
        for (const auto& s : samples)
            if (s.member) pts.push_back(s.z);
        return PointSet(std::move(pts));
    }

    void to_csv(std::ostream& os) const {
        os << "re,im,value,member\n";
        for (const auto& s : samples)
            os << detail::fmt17(s.z.real()) << ',' << detail::fmt17(s.z.imag()) << ','
               << detail::fmt17(s.value) << ',' << (s.member ? 1 : 0) << '\n';
    }

    std::string csv() const {
        std::ostringstream os;
        to_csv(os);
        return os.str();
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["meta"] = {{"algorithm", meta.algorithm},
                     {"params", meta.params},
                     {"timestamp", meta.timestamp}};
        nlohmann::json g;
        if (grid.mode == GridSpec::Mode::Theta) {
            g["mode"] = "theta";
            g["n"] = grid.n;
        } else {
            g["mode"] = "rect";
            g["re_min"] = grid.re_min;
            g["re_max"] = grid.re_max;
            g["im_min"] = grid.im_min;
            g["im_max"] = grid.im_max;
            g["step"] = grid.step;
        }
        j["grid"] = g;
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : samples)
            arr.push_back({s.z.real(), s.z.imag(), s.value, s.member});
        j["samples"] = arr;
        return j;
    }

    static RegionEstimate from_json(const nlohmann::json& j) {
        RegionEstimate r;
        const auto& g = j.at("grid");
        if (g.at("mode") == "theta") {
            r.grid = GridSpec::theta(g.at("n").get<int>());
        } else {
            r.grid = GridSpec::rect(g.at("re_min"), g.at("re_max"), g.at("im_min"),
                                    g.at("im_max"), g.at("step"));
        }
        r.meta.algorithm = j.at("meta").at("algorithm").get<std::string>();
        r.meta.params = j.at("meta").at("params");
        r.meta.timestamp = j.at("meta").at("timestamp").get<std::string>();
        for (const auto& s : j.at("samples"))
            r.samples.push_back({Complex(s.at(0).get<double>(), s.at(1).get<double>()),
                                 s.at(2).get<double>(), s.at(3).get<bool>()});
        return r;
    }
};

/// CSV for a bare point set: "re,im" rows, 17 significant digits.
inline void point_set_to_csv(const PointSet& ps, std::ostream& os) {
    os << "re,im\n";
    for (const Complex& p : ps.points())
        os << detail::fmt17(p.real()) << ',' << detail::fmt17(p.imag()) << '\n';
}

/// Reads either "re,im" or "re,im,value,member" CSV. For regions, only
/// member points are kept; for bare point sets, every row is kept.
inline PointSet load_points_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InvalidParameter("empty CSV input");
    const bool region = line.rfind("re,im,value,member", 0) == 0;
    if (!region && line.rfind("re,im", 0) != 0)
        throw InvalidParameter("unrecognized CSV header: " + line);
    std::vector<Complex> pts;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        double re = 0, im = 0, value = 0;
        int member = 1;
        std::getline(ls, tok, ',');
        re = std::strtod(tok.c_str(), nullptr);
        std::getline(ls, tok, ',');
        im = std::strtod(tok.c_str(), nullptr);
        if (region) {
            std::getline(ls, tok, ',');
            value = std::strtod(tok.c_str(), nullptr);
            (void)value;
            std::getline(ls, tok, ',');
            member = std::atoi(tok.c_str());
        }
        if (member) pts.emplace_back(re, im);
    }
    return PointSet(std::move(pts));
}

inline PointSet load_points_csv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidParameter("cannot open " + path);
    return load_points_csv(f);
}

} // namespace speckit
