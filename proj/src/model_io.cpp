#include "markov_ldp/model_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ldp {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void invalid(const std::string& source, const std::string& what) {
    throw ModelFileError(3, source + ": " + what);
}

std::vector<double> numbers(const json& j, const std::string& source, const std::string& field) {
    if (!j.is_array()) invalid(source, "'" + field + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) invalid(source, "'" + field + "' must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

} // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelFileError(2, "cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Model parse_model(const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::ostringstream os;
        os << source << ":" << line << ":" << col << ": parse error: " << e.what();
        throw ModelFileError(2, os.str());
    }
    if (!doc.is_object()) invalid(source, "model must be a JSON object");
    if (!doc.contains("states") || !doc["states"].is_array()) invalid(source, "missing 'states' array");
    if (!doc.contains("rates") || !doc["rates"].is_array()) invalid(source, "missing 'rates' matrix");

    std::vector<std::string> labels;
    for (const auto& s : doc["states"]) {
        if (!s.is_string()) invalid(source, "'states' must contain strings");
        labels.push_back(s.get<std::string>());
    }
    const auto& rows = doc["rates"];
    Eigen::MatrixXd rates(static_cast<Eigen::Index>(rows.size()),
                          static_cast<Eigen::Index>(rows.empty() ? 0 : rows[0].size()));
    for (std::size_t x = 0; x < rows.size(); ++x) {
        const std::vector<double> row = numbers(rows[x], source, "rates");
        if (static_cast<Eigen::Index>(row.size()) != rates.cols()) invalid(source, "'rates' rows have unequal length");
        for (std::size_t y = 0; y < row.size(); ++y) {
            rates(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = row[y];
        }
    }

    try {
        StateSpace space(labels);
        Generator gen = validate_generator(space, rates);
        std::vector<std::string> warnings;
        std::optional<Measure> initial;
        if (doc.contains("initial")) {
            const std::vector<double> p = numbers(doc["initial"], source, "initial");
            initial.emplace(space, Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size())));
        } else {
            warnings.push_back("no 'initial' vector; using the uniform law");
            initial.emplace(Measure::uniform(space));
        }
        std::string description;
        if (doc.contains("description") && doc["description"].is_string()) {
            description = doc["description"].get<std::string>();
        }
        return Model{std::move(gen), std::move(*initial), std::move(description), std::move(warnings)};
    } catch (const LdpError& e) {
        invalid(source, e.what());
    }
}

Model load_model(const std::filesystem::path& path) {
    return parse_model(read_text_file(path), path.string());
}

void write_path_csv(const std::filesystem::path& path, const PathGrid& grid, const std::vector<double>* cell_actions) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << std::setprecision(17);
    out << "t";
    for (const auto& l : grid.space().labels()) out << "," << l;
    if (cell_actions) out << ",action";
    out << "\n";
    for (std::size_t k = 0; k <= grid.intervals(); ++k) {
        out << grid.time(k);
        const Eigen::VectorXd& p = grid.at(k).probs();
        for (Eigen::Index x = 0; x < p.size(); ++x) out << "," << p(x);
        if (cell_actions) {
            const double a = k == 0 ? 0.0 : (k - 1 < cell_actions->size() ? (*cell_actions)[k - 1] : NAN);
            out << "," << a;
        }
        out << "\n";
    }
}

PathGrid read_path_csv(const std::filesystem::path& path, const StateSpace& space) {
    const std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) -> void {
        throw ModelFileError(2, path.string() + ":" + std::to_string(lineno) + ": " + what);
    };
    if (!std::getline(in, line)) fail("empty path file");
    ++lineno;
    const std::vector<std::string> header = split_csv_line(line);
    const std::size_t n = space.size();
    const bool has_action = header.size() == n + 2 && header.back() == "action";
    if (header.empty() || header[0] != "t" || (header.size() != n + 1 && !has_action)) {
        fail("header must be 't,<labels>' matching the model");
    }
    for (std::size_t x = 0; x < n; ++x) {
        if (header[x + 1] != space.label(x)) fail("column '" + header[x + 1] + "' does not match state '" + space.label(x) + "'");
    }
    std::vector<double> times;
    std::vector<Measure> nodes;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size()) fail("wrong number of columns");
        std::vector<double> v(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            try {
                std::size_t used = 0;
                v[c] = std::stod(cells[c], &used);
                if (used != cells[c].size()) fail("bad number '" + cells[c] + "'");
            } catch (const std::logic_error&) {
                fail("bad number '" + cells[c] + "'");
            }
        }
        times.push_back(v[0]);
        Eigen::VectorXd p(static_cast<Eigen::Index>(n));
        for (std::size_t x = 0; x < n; ++x) p(static_cast<Eigen::Index>(x)) = v[x + 1];
        try {
            nodes.emplace_back(space, std::move(p));
        } catch (const LdpError& e) {
            fail(e.what());
        }
    }
    if (nodes.size() < 2) fail("path needs at least two rows");
    const double t0 = times.front(), t1 = times.back();
    const double dt = (t1 - t0) / static_cast<double>(times.size() - 1);
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (std::abs(times[k] - (t0 + dt * static_cast<double>(k))) > 1e-9 * std::max(1.0, std::abs(t1 - t0))) {
            lineno = k + 2;
            fail("time column is not a uniform grid");
        }
    }
    try {
        return PathGrid(space, t0, t1, std::move(nodes));
    } catch (const LdpError& e) {
        throw ModelFileError(2, path.string() + ": " + e.what());
    }
}

void to_json(json& j, const RunReport& r) {
    j = json{{"command", r.command},
             {"arguments", r.arguments},
             {"inputs_digest", r.inputs_digest},
             {"outputs", r.outputs},
             {"wall_time_seconds", r.wall_time_seconds}};
    j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
}

void from_json(const json& j, RunReport& r) {
    j.at("command").get_to(r.command);
    j.at("arguments").get_to(r.arguments);
    j.at("inputs_digest").get_to(r.inputs_digest);
    r.outputs = j.at("outputs");
    j.at("wall_time_seconds").get_to(r.wall_time_seconds);
    if (j.contains("seed") && !j["seed"].is_null()) {
        r.seed = j["seed"].get<std::uint64_t>();
    } else {
        r.seed.reset();
    }
}

void save_report(const std::filesystem::path& path, const RunReport& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << json(report).dump(2) << "\n";
}

RunReport load_report(const std::filesystem::path& path) {
    return json::parse(read_text_file(path)).get<RunReport>();
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

} // namespace ldp
