#include "petallab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace petallab {

namespace {

std::string num(double v, const char* spec = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

double json_number(const nlohmann::json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::quiet_NaN();
    }
    return j.get<double>();
}

nlohmann::json encode_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

Outcome outcome_from_name(const std::string& s) {
    if (s == "pass") return Outcome::Pass;
    if (s == "fail") return Outcome::Fail;
    return Outcome::Inconclusive;
}

}  // namespace

std::string report_to_csv(const SweepReport& report) {
    std::ostringstream os;
    os << "t,quantity,value,std_err,flags\n";
    for (const auto& row : report.rows)
        os << num(row.t) << ',' << row.quantity << ',' << num(row.value) << ','
           << num(row.std_err) << ',' << row.flags << '\n';
    return os.str();
}

std::string report_to_json(const SweepReport& report) {
    nlohmann::json j;
    j["provenance"] = {{"seed", report.seed},
                       {"version", report.version},
                       {"domain", report.domain_desc},
                       {"petal", report.petal_desc}};
    j["rows"] = nlohmann::json::array();
    for (const auto& row : report.rows)
        j["rows"].push_back({{"t", row.t},
                             {"quantity", row.quantity},
                             {"value", encode_number(row.value)},
                             {"std_err", encode_number(row.std_err)},
                             {"flags", row.flags}});
    j["references"] = nlohmann::json::array();
    for (const auto& ref : report.references)
        j["references"].push_back({{"quantity", ref.quantity},
                                   {"value", encode_number(ref.value)},
                                   {"std_err", encode_number(ref.std_err)},
                                   {"source", ref.source}});
    j["verdicts"] = nlohmann::json::array();
    for (const auto& v : report.verdicts)
        j["verdicts"].push_back({{"check", v.check},
                                 {"outcome", outcome_name(v.outcome)},
                                 {"margin", encode_number(v.margin)},
                                 {"detail", v.detail}});
    return j.dump(2) + "\n";
}

SweepReport report_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    SweepReport report;
    const auto& prov = j.at("provenance");
    report.seed = prov.at("seed").get<uint64_t>();
    report.version = prov.at("version").get<std::string>();
    report.domain_desc = prov.at("domain").get<std::string>();
    report.petal_desc = prov.value("petal", "");
    for (const auto& row : j.at("rows"))
        report.rows.push_back({row.at("t").get<double>(), row.at("quantity").get<std::string>(),
                               json_number(row.at("value")), json_number(row.at("std_err")),
                               row.at("flags").get<std::string>()});
    for (const auto& ref : j.at("references"))
        report.references.push_back({ref.at("quantity").get<std::string>(),
                                     json_number(ref.at("value")), json_number(ref.at("std_err")),
                                     ref.at("source").get<std::string>()});
    for (const auto& v : j.at("verdicts"))
        report.verdicts.push_back({v.at("check").get<std::string>(),
                                   outcome_from_name(v.at("outcome").get<std::string>()),
                                   json_number(v.at("margin")), v.at("detail").get<std::string>()});
    return report;
}

namespace {

struct Series {
    std::vector<double> t;
    std::vector<double> v;
    double ref = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace

std::string report_to_svg(const SweepReport& report) {
    require(!report.rows.empty(), "render_report: empty report");
    std::map<std::string, Series> series;
    std::vector<std::string> order;
    for (const auto& row : report.rows) {
        if (!std::isfinite(row.value)) continue;
        if (!series.count(row.quantity)) order.push_back(row.quantity);
        series[row.quantity].t.push_back(row.t);
        series[row.quantity].v.push_back(row.value);
    }
    for (const auto& ref : report.references)
        if (series.count(ref.quantity)) series[ref.quantity].ref = ref.value;

    const int W = 640, H = 180, padL = 70, padR = 20, padT = 24, padB = 28;
    std::ostringstream os;
    const int total_h = static_cast<int>(order.size()) * H + 10;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << total_h
       << "\" font-family=\"monospace\" font-size=\"11\">\n";
    int top = 0;
    for (const auto& name : order) {
        const Series& s = series[name];
        double tmin = *std::min_element(s.t.begin(), s.t.end());
        double tmax = *std::max_element(s.t.begin(), s.t.end());
        double vmin = *std::min_element(s.v.begin(), s.v.end());
        double vmax = *std::max_element(s.v.begin(), s.v.end());
        if (std::isfinite(s.ref)) {
            vmin = std::min(vmin, s.ref);
            vmax = std::max(vmax, s.ref);
        }
        if (tmax == tmin) tmax = tmin + 1.0;
        if (vmax == vmin) {
            vmax += 0.5 * std::abs(vmax) + 1e-12;
            vmin -= 0.5 * std::abs(vmin) + 1e-12;
        }
        auto X = [&](double t) {
            return padL + (t - tmin) / (tmax - tmin) * (W - padL - padR);
        };
        auto Y = [&](double v) {
            return top + padT + (vmax - v) / (vmax - vmin) * (H - padT - padB);
        };
        os << "<g>\n";
        os << "<text x=\"" << padL << "\" y=\"" << top + 14 << "\">" << name << "</text>\n";
        // axes
        os << "<line x1=\"" << padL << "\" y1=\"" << Y(vmin) << "\" x2=\"" << W - padR
           << "\" y2=\"" << Y(vmin) << "\" stroke=\"black\"/>\n";
        os << "<line x1=\"" << padL << "\" y1=\"" << Y(vmin) << "\" x2=\"" << padL << "\" y2=\""
           << Y(vmax) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << W / 2 << "\" y=\"" << top + H - 8 << "\">t</text>\n";
        os << "<text x=\"4\" y=\"" << Y(vmax) + 10 << "\">" << num(vmax, "%.4g") << "</text>\n";
        os << "<text x=\"4\" y=\"" << Y(vmin) << "\">" << num(vmin, "%.4g") << "</text>\n";
        os << "<text x=\"" << padL - 4 << "\" y=\"" << top + H - 8 << "\">" << num(tmin, "%.4g")
           << "</text>\n";
        os << "<text x=\"" << W - padR - 30 << "\" y=\"" << top + H - 8 << "\">"
           << num(tmax, "%.4g") << "</text>\n";
        if (std::isfinite(s.ref))
            os << "<line x1=\"" << padL << "\" y1=\"" << Y(s.ref) << "\" x2=\"" << W - padR
               << "\" y2=\"" << Y(s.ref) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
        os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.t.size(); ++i)
            os << num(X(s.t[i]), "%.2f") << ',' << num(Y(s.v[i]), "%.2f") << ' ';
        os << "\"/>\n</g>\n";
        top += H;
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<std::string> render_report(const SweepReport& report,
                                       const std::vector<std::string>& formats,
                                       const std::string& out_dir) {
    require(!formats.empty(), "render_report: no formats requested");
    require(!report.rows.empty(), "render_report: empty report");
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("render_report: cannot create " + out_dir + ": " + ec.message());

    std::vector<std::string> written;
    auto emit = [&](const std::string& name, const std::string& content) {
        const fs::path path = fs::path(out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("render_report: cannot write " + path.string());
        out << content;
        written.push_back(path.string());
    };
    for (const auto& f : formats) {
        if (f == "csv")
            emit("report.csv", report_to_csv(report));
        else if (f == "json")
            emit("report.json", report_to_json(report));
        else if (f == "svg")
            emit("report.svg", report_to_svg(report));
        else
            throw PreconditionError("render_report: unknown format " + f);
    }
    return written;
}

}  // namespace petallab
