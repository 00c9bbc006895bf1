#include "petallab/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "petallab/rng.hpp"

namespace petallab {

namespace {

struct Lexer {
    const std::string& text;
    size_t pos = 0;

    void skip_space() {
        while (pos < text.size()) {
            const char c = text[pos];
            if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_space();
        return pos >= text.size();
    }

    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }

    char get() {
        skip_space();
        if (pos >= text.size()) throw ConfigError("config: unexpected end of input");
        return text[pos++];
    }

    void expect(char c) {
        const char g = get();
        if (g != c)
            throw ConfigError(std::string("config: expected '") + c + "', found '" + g + "'");
    }

    std::string bare_key() {
        skip_space();
        size_t start = pos;
        while (pos < text.size()) {
            const char c = text[pos];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')
                ++pos;
            else
                break;
        }
        if (start == pos) throw ConfigError("config: expected a key");
        return text.substr(start, pos - start);
    }

    std::string string_literal() {
        expect('"');
        std::string out;
        while (pos < text.size() && text[pos] != '"') {
            char c = text[pos++];
            if (c == '\\' && pos < text.size()) {
                const char e = text[pos++];
                switch (e) {
                    case 'n': c = '\n'; break;
                    case 't': c = '\t'; break;
                    case '"': c = '"'; break;
                    case '\\': c = '\\'; break;
                    default: throw ConfigError("config: unsupported escape");
                }
            }
            out += c;
        }
        if (pos >= text.size()) throw ConfigError("config: unterminated string");
        ++pos;
        return out;
    }

    nlohmann::json number_or_bool() {
        skip_space();
        if (text.compare(pos, 4, "true") == 0) {
            pos += 4;
            return true;
        }
        if (text.compare(pos, 5, "false") == 0) {
            pos += 5;
            return false;
        }
        size_t start = pos;
        while (pos < text.size()) {
            const char c = text[pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' ||
                c == 'e' || c == 'E')
                ++pos;
            else
                break;
        }
        if (start == pos) throw ConfigError("config: expected a value");
        const std::string tok = text.substr(start, pos - start);
        try {
            if (tok.find_first_of(".eE") == std::string::npos) {
                return static_cast<int64_t>(std::stoll(tok));
            }
            return std::stod(tok);
        } catch (const std::exception&) {
            throw ConfigError("config: bad number '" + tok + "'");
        }
    }

    nlohmann::json value() {
        const char c = peek();
        if (c == '"') return string_literal();
        if (c == '[') {
            get();
            nlohmann::json arr = nlohmann::json::array();
            if (peek() == ']') {
                get();
                return arr;
            }
            for (;;) {
                arr.push_back(value());
                const char n = get();
                if (n == ']') break;
                if (n != ',') throw ConfigError("config: expected ',' or ']' in array");
                if (peek() == ']') {  // trailing comma
                    get();
                    break;
                }
            }
            return arr;
        }
        if (c == '{') {
            get();
            nlohmann::json obj = nlohmann::json::object();
            if (peek() == '}') {
                get();
                return obj;
            }
            for (;;) {
                const std::string key = bare_key();
                expect('=');
                if (obj.contains(key)) throw ConfigError("config: duplicate key " + key);
                obj[key] = value();
                const char n = get();
                if (n == '}') break;
                if (n != ',') throw ConfigError("config: expected ',' or '}' in table");
            }
            return obj;
        }
        return number_or_bool();
    }
};

}  // namespace

nlohmann::json parse_config_text(const std::string& text) {
    Lexer lex{text};
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* current = &root;
    while (!lex.eof()) {
        if (lex.peek() == '[') {
            lex.get();
            const std::string name = lex.bare_key();
            lex.expect(']');
            if (root.contains(name)) throw ConfigError("config: duplicate table " + name);
            root[name] = nlohmann::json::object();
            current = &root[name];
            continue;
        }
        const std::string key = lex.bare_key();
        lex.expect('=');
        if (current->contains(key)) throw ConfigError("config: duplicate key " + key);
        (*current)[key] = lex.value();
    }
    return root;
}

namespace {

void reject_unknown(const nlohmann::json& table, const std::string& where,
                    std::initializer_list<const char*> allowed) {
    for (auto it = table.begin(); it != table.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ConfigError("config: unknown key '" + it.key() + "' in [" + where + "]");
    }
}

double as_double(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError("config: " + where + " must be a number");
    return v.get<double>();
}

Complex as_complex(const nlohmann::json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2)
        throw ConfigError("config: " + where + " must be [re, im]");
    return {as_double(v[0], where), as_double(v[1], where)};
}

KoenigsDomain parse_domain(const nlohmann::json& table) {
    if (!table.contains("shape")) throw ConfigError("config: [domain] needs a shape");
    const std::string shape = table.at("shape").get<std::string>();
    auto slits_of = [&](const nlohmann::json& t) {
        std::vector<Slit> slits;
        for (const auto& s : t.at("slits")) {
            if (!s.is_array() || s.size() != 2)
                throw ConfigError("config: each slit must be [ordinate, tip]");
            slits.push_back({as_double(s[0], "slit ordinate"), as_double(s[1], "slit tip")});
        }
        return slits;
    };
    try {
        if (shape == "unit-disk") {
            reject_unknown(table, "domain", {"shape"});
            return KoenigsDomain::unit_disk();
        }
        if (shape == "half-plane") {
            reject_unknown(table, "domain", {"shape"});
            return KoenigsDomain::upper_half_plane();
        }
        if (shape == "strip") {
            reject_unknown(table, "domain", {"shape", "y0", "y1"});
            return KoenigsDomain::horizontal_strip(as_double(table.at("y0"), "y0"),
                                                   as_double(table.at("y1"), "y1"));
        }
        if (shape == "slit-strip") {
            reject_unknown(table, "domain", {"shape", "height", "slits"});
            return KoenigsDomain::slit_strip(as_double(table.at("height"), "height"),
                                             slits_of(table));
        }
        if (shape == "slit-half-plane") {
            reject_unknown(table, "domain", {"shape", "slits"});
            return KoenigsDomain::slit_half_plane(slits_of(table));
        }
        if (shape == "exp-cusp") {
            reject_unknown(table, "domain", {"shape"});
            return KoenigsDomain::exp_cusp();
        }
    } catch (const PreconditionError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: [domain] ") + e.what());
    }
    throw ConfigError("config: unknown shape '" + shape + "'");
}

CompactSet parse_compact(const nlohmann::json& table) {
    reject_unknown(table, "compact", {"disks", "polylines"});
    std::vector<DiskPiece> disks;
    std::vector<PolylinePiece> polylines;
    if (table.contains("disks")) {
        for (const auto& d : table.at("disks")) {
            if (!d.is_array() || d.size() != 3)
                throw ConfigError("config: each disk must be [re, im, r]");
            disks.push_back({{as_double(d[0], "disk"), as_double(d[1], "disk")},
                             as_double(d[2], "disk radius")});
        }
    }
    if (table.contains("polylines")) {
        for (const auto& p : table.at("polylines")) {
            PolylinePiece piece;
            for (const auto& v : p) piece.vertices.push_back(as_complex(v, "polyline vertex"));
            polylines.push_back(std::move(piece));
        }
    }
    try {
        return CompactSet(std::move(disks), std::move(polylines));
    } catch (const PreconditionError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
    const nlohmann::json doc = parse_config_text(text);
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        static const char* tables[] = {"domain", "compact", "probes", "sweep",
                                       "wos",    "fekete",  "output"};
        bool ok = false;
        for (const char* t : tables)
            if (it.key() == t) ok = true;
        if (!ok) throw ConfigError("config: unknown table [" + it.key() + "]");
    }
    if (!doc.contains("domain") || !doc.contains("compact"))
        throw ConfigError("config: [domain] and [compact] are required");

    RunConfig run{SweepConfig(parse_domain(doc.at("domain")), parse_compact(doc.at("compact")))};
    SweepConfig& sweep = run.sweep;

    try {
        if (doc.contains("probes")) {
            const auto& t = doc.at("probes");
            reject_unknown(t, "probes", {"z", "w", "grid"});
            if (t.contains("z")) sweep.z = as_complex(t.at("z"), "z");
            if (t.contains("w")) sweep.w = as_complex(t.at("w"), "w");
            if (t.contains("grid"))
                for (const auto& p : t.at("grid"))
                    sweep.probe_grid.push_back(as_complex(p, "probes.grid"));
        }
        if (doc.contains("sweep")) {
            const auto& t = doc.at("sweep");
            reject_unknown(t, "sweep", {"t_grid", "quantities", "diameter_n", "m", "petal"});
            if (t.contains("t_grid")) {
                sweep.t_grid.clear();
                for (const auto& v : t.at("t_grid"))
                    sweep.t_grid.push_back(as_double(v, "t_grid"));
            }
            if (t.contains("quantities")) {
                static const char* known[] = {"harmonic", "density", "distance",  "green",
                                              "area",     "n_diameter", "capacity", "bounds"};
                for (const auto& q : t.at("quantities")) {
                    const std::string name = q.get<std::string>();
                    bool ok = false;
                    for (const char* k : known)
                        if (name == k) ok = true;
                    if (!ok) throw ConfigError("config: unknown quantity '" + name + "'");
                    sweep.quantities.push_back(name);
                }
            }
            if (t.contains("diameter_n"))
                sweep.diameter_n = static_cast<int>(as_double(t.at("diameter_n"), "diameter_n"));
            if (t.contains("m")) sweep.m = static_cast<int>(as_double(t.at("m"), "m"));
            if (t.contains("petal"))
                sweep.petal_index = static_cast<int>(as_double(t.at("petal"), "petal"));
        }
        if (doc.contains("wos")) {
            const auto& t = doc.at("wos");
            reject_unknown(t, "wos", {"epsilon_shell", "max_steps", "n_walks", "seed"});
            if (t.contains("epsilon_shell"))
                sweep.wos.epsilon_shell = as_double(t.at("epsilon_shell"), "epsilon_shell");
            if (t.contains("max_steps"))
                sweep.wos.max_steps = static_cast<long>(as_double(t.at("max_steps"), "max_steps"));
            if (t.contains("n_walks"))
                sweep.wos.n_walks = static_cast<long>(as_double(t.at("n_walks"), "n_walks"));
            if (t.contains("seed")) {
                sweep.wos.seed = t.at("seed").get<uint64_t>();
                run.seed_from_config = true;
            }
        }
        if (doc.contains("fekete")) {
            const auto& t = doc.at("fekete");
            reject_unknown(t, "fekete", {"grid", "restarts", "polish"});
            if (t.contains("grid"))
                sweep.fekete.grid_m = static_cast<int>(as_double(t.at("grid"), "fekete.grid"));
            if (t.contains("restarts"))
                sweep.fekete.n_restarts =
                    static_cast<int>(as_double(t.at("restarts"), "fekete.restarts"));
            if (t.contains("polish")) sweep.fekete.polish = t.at("polish").get<bool>();
        }
        if (doc.contains("output")) {
            const auto& t = doc.at("output");
            reject_unknown(t, "output", {"dir", "formats"});
            if (t.contains("dir")) run.out_dir = t.at("dir").get<std::string>();
            if (t.contains("formats")) {
                run.formats.clear();
                for (const auto& f : t.at("formats")) run.formats.push_back(f.get<std::string>());
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    if (!run.seed_from_config) {
        if (const char* env = std::getenv("PETALLAB_SEED")) {
            try {
                sweep.wos.seed = std::stoull(env);
            } catch (const std::exception&) {
                throw ConfigError("PETALLAB_SEED must be an unsigned integer");
            }
        } else {
            sweep.wos.seed = 1;
        }
    }
    sweep.fekete.wos = sweep.wos;
    sweep.fekete.seed = mix_seed(sweep.wos.seed, 0x46454b54ull);

    try {
        sweep.wos.validate();
    } catch (const PreconditionError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return run;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

namespace {

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string emit_config(const RunConfig& cfg) {
    const SweepConfig& s = cfg.sweep;
    std::ostringstream os;
    os << "[domain]\n";
    switch (s.domain.shape()) {
        case Shape::UnitDisk:
            os << "shape = \"unit-disk\"\n";
            break;
        case Shape::UpperHalfPlane:
            os << "shape = \"half-plane\"\n";
            break;
        case Shape::HorizontalStrip:
            os << "shape = \"strip\"\ny0 = " << fmt_num(s.domain.strip_y0())
               << "\ny1 = " << fmt_num(s.domain.strip_y1()) << "\n";
            break;
        case Shape::SlitStrip:
        case Shape::SlitHalfPlane: {
            if (s.domain.shape() == Shape::SlitStrip)
                os << "shape = \"slit-strip\"\nheight = " << fmt_num(s.domain.strip_y1()) << "\n";
            else
                os << "shape = \"slit-half-plane\"\n";
            os << "slits = [";
            for (size_t i = 0; i < s.domain.slits().size(); ++i) {
                if (i) os << ", ";
                os << '[' << fmt_num(s.domain.slits()[i].height) << ", "
                   << fmt_num(s.domain.slits()[i].tip) << ']';
            }
            os << "]\n";
            break;
        }
        case Shape::ExpCusp:
            os << "shape = \"exp-cusp\"\n";
            break;
    }
    os << "\n[compact]\n";
    if (!s.compact.disks().empty()) {
        os << "disks = [";
        for (size_t i = 0; i < s.compact.disks().size(); ++i) {
            const auto& d = s.compact.disks()[i];
            if (i) os << ", ";
            os << '[' << fmt_num(d.center.real()) << ", " << fmt_num(d.center.imag()) << ", "
               << fmt_num(d.radius) << ']';
        }
        os << "]\n";
    }
    if (!s.compact.polylines().empty()) {
        os << "polylines = [";
        for (size_t i = 0; i < s.compact.polylines().size(); ++i) {
            if (i) os << ", ";
            os << '[';
            const auto& p = s.compact.polylines()[i];
            for (size_t j = 0; j < p.vertices.size(); ++j) {
                if (j) os << ", ";
                os << '[' << fmt_num(p.vertices[j].real()) << ", " << fmt_num(p.vertices[j].imag())
                   << ']';
            }
            os << ']';
        }
        os << "]\n";
    }
    os << "\n[probes]\n";
    os << "z = [" << fmt_num(s.z.real()) << ", " << fmt_num(s.z.imag()) << "]\n";
    os << "w = [" << fmt_num(s.w.real()) << ", " << fmt_num(s.w.imag()) << "]\n";
    if (!s.probe_grid.empty()) {
        os << "grid = [";
        for (size_t i = 0; i < s.probe_grid.size(); ++i) {
            if (i) os << ", ";
            os << '[' << fmt_num(s.probe_grid[i].real()) << ", " << fmt_num(s.probe_grid[i].imag())
               << ']';
        }
        os << "]\n";
    }
    os << "\n[sweep]\n";
    os << "t_grid = [";
    for (size_t i = 0; i < s.t_grid.size(); ++i) {
        if (i) os << ", ";
        os << fmt_num(s.t_grid[i]);
    }
    os << "]\n";
    if (!s.quantities.empty()) {
        os << "quantities = [";
        for (size_t i = 0; i < s.quantities.size(); ++i) {
            if (i) os << ", ";
            os << '"' << s.quantities[i] << '"';
        }
        os << "]\n";
    }
    os << "diameter_n = " << s.diameter_n << "\n";
    os << "m = " << s.m << "\n";
    os << "petal = " << s.petal_index << "\n";
    os << "\n[wos]\n";
    os << "epsilon_shell = " << fmt_num(s.wos.epsilon_shell) << "\n";
    os << "max_steps = " << s.wos.max_steps << "\n";
    os << "n_walks = " << s.wos.n_walks << "\n";
    os << "seed = " << s.wos.seed << "\n";
    os << "\n[fekete]\n";
    os << "grid = " << s.fekete.grid_m << "\n";
    os << "restarts = " << s.fekete.n_restarts << "\n";
    os << "polish = " << (s.fekete.polish ? "true" : "false") << "\n";
    os << "\n[output]\n";
    os << "dir = \"" << cfg.out_dir << "\"\n";
    os << "formats = [";
    for (size_t i = 0; i < cfg.formats.size(); ++i) {
        if (i) os << ", ";
        os << '"' << cfg.formats[i] << '"';
    }
    os << "]\n";
    return os.str();
}

}  // namespace petallab
