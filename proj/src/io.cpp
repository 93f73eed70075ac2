#include "evset/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "evset/error.hpp"

namespace evset {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json report_to_json(const BoundReport& r) {
    return nlohmann::json{
        {"name", r.name},       {"inputs", r.inputs},   {"lhs", r.lhs},
        {"rhs", r.rhs},         {"margin", r.margin},   {"tolerance", r.tolerance},
        {"pass", r.pass},       {"vacuous", r.vacuous}, {"note", r.note},
    };
}

std::string entropy_series_csv(const EntropySeries& series) {
    std::string out = "n,entropy_nats,support,entropy_rate\n";
    for (const auto& p : series.points) {
        double rate = p.n > 0 ? p.entropy_nats / p.n : 0.0;
        out += std::to_string(p.n) + "," + fmt17(p.entropy_nats) + "," + fmt17(p.support) + "," +
               fmt17(rate) + "\n";
    }
    return out;
}

std::string green_series_csv(const std::vector<GreenPoint>& series) {
    std::string out = "t,p_return,partial_sum\n";
    for (const auto& p : series)
        out += std::to_string(p.t) + "," + fmt17(p.p_return) + "," + fmt17(p.partial_sum) + "\n";
    return out;
}

std::string to_jsonl(const std::vector<nlohmann::json>& records) {
    std::string out;
    for (const auto& rec : records) {
        out += rec.dump();
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::BadInput, "cannot open '" + path + "' for writing");
    f << content;
    if (!f)
        throw Error(ErrorCode::BadInput, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::BadInput, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace evset
