#include "stowave/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "stowave/errors.hpp"

namespace stowave {

static_assert(std::endian::native == std::endian::little, "file formats assume little-endian");
static_assert(std::numeric_limits<double>::is_iec559, "file formats assume IEEE-754 doubles");

namespace {

constexpr char kPathMagic[8] = {'S', 'W', 'N', 'P', 'A', 'T', 'H', '1'};

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

std::ofstream open_out(const std::filesystem::path& file) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream os(file, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + file.string());
    return os;
}

}  // namespace

void save_noise_path(const NoisePath& path, const std::filesystem::path& file) {
    std::ofstream os = open_out(file);
    os.write(kPathMagic, sizeof kPathMagic);
    put(os, path.seed);
    put(os, path.t_min);
    put(os, path.t_max);
    put(os, path.dt);
    put(os, static_cast<std::int32_t>(path.m));
    put(os, static_cast<std::int32_t>(0));
    os.write(reinterpret_cast<const char*>(path.increments.data()),
             static_cast<std::streamsize>(path.increments.size() * sizeof(double)));
    if (!os) throw std::runtime_error("write failed: " + file.string());
}

NoisePath load_noise_path(const std::filesystem::path& file) {
    std::ifstream is(file, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + file.string());
    char magic[8];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, kPathMagic, sizeof magic) != 0)
        throw std::runtime_error("not a noise-path file: " + file.string());
    NoisePath path;
    path.seed = get<std::int64_t>(is);
    path.t_min = get<double>(is);
    path.t_max = get<double>(is);
    path.dt = get<double>(is);
    path.m = get<std::int32_t>(is);
    get<std::int32_t>(is);  // reserved
    if (!is || path.m <= 0 || !(path.dt > 0.0) || !(path.t_min <= 0.0) || !(path.t_max >= 0.0))
        throw std::runtime_error("corrupt noise-path header: " + file.string());
    const double span = (path.t_max - path.t_min) / path.dt;
    const auto steps = static_cast<std::size_t>(std::llround(span));
    if (std::abs(span - static_cast<double>(steps)) > 1e-9)
        throw std::runtime_error("corrupt noise-path header: " + file.string());
    path.increments.resize(steps * static_cast<std::size_t>(path.m));
    is.read(reinterpret_cast<char*>(path.increments.data()),
            static_cast<std::streamsize>(path.increments.size() * sizeof(double)));
    if (!is || is.peek() != std::char_traits<char>::eof())
        throw std::runtime_error("noise-path body has wrong length: " + file.string());
    return path;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string config_hash(const nlohmann::json& config) {
    const std::string dump = config.dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_text_file(const std::string& body, const std::filesystem::path& file) {
    std::ofstream os = open_out(file);
    os.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!os) throw std::runtime_error("write failed: " + file.string());
}

void write_json_file(const nlohmann::json& j, const std::filesystem::path& file) {
    write_text_file(j.dump(2) + "\n", file);
}

namespace {

std::string hash_line(const std::string& hash) { return "# config_hash=" + hash + "\n"; }

}  // namespace

std::string field_csv(const Field& f, const std::string& hash) {
    std::string out = hash_line(hash);
    out += f.grid.dim == 1 ? "x,value\n" : "x,y,value\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto c = f.grid.center(i);
        out += format_double(c[0]);
        if (f.grid.dim == 2) out += "," + format_double(c[1]);
        out += "," + format_double(f[i]) + "\n";
    }
    return out;
}

std::string path_csv(const NoisePath& path, const std::string& hash) {
    std::string out = hash_line(hash);
    out += "t";
    for (int j = 0; j < path.m; ++j) out += ",w" + std::to_string(j);
    out += "\n";
    std::vector<std::vector<double>> nodes;
    nodes.reserve(static_cast<std::size_t>(path.m));
    for (int j = 0; j < path.m; ++j) nodes.push_back(path.node_values(j));
    for (std::size_t k = 0; k <= path.steps(); ++k) {
        out += format_double(path.grid_time(k));
        for (int j = 0; j < path.m; ++j) out += "," + format_double(nodes[static_cast<std::size_t>(j)][k]);
        out += "\n";
    }
    return out;
}

std::string energy_csv(const EnergyReport& rep, const std::string& hash) {
    std::string out = hash_line(hash);
    out += "t,q,bound,margin\n";
    for (const EnergySample& s : rep.samples)
        out += format_double(s.t) + "," + format_double(s.q) + "," + format_double(s.bound) + "," +
               format_double(s.margin) + "\n";
    return out;
}

std::string tail_csv(const TailReport& rep, const std::string& hash) {
    std::string out = hash_line(hash);
    out += "t";
    for (double r : rep.r_schedule) out += ",r=" + format_double(r);
    out += "\n";
    for (std::size_t i = 0; i < rep.t_schedule.size(); ++i) {
        out += format_double(rep.t_schedule[i]);
        for (double v : rep.max_tail[i]) out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

std::string absorb_csv(const AbsorbReport& rep, const std::string& hash) {
    std::string out = hash_line(hash);
    out += "seed,factor,r0,radius,init_enorm,final_enorm,entered\n";
    for (const AbsorbMember& m : rep.members)
        out += std::to_string(m.seed) + "," + format_double(m.factor) + "," + format_double(m.r0) +
               "," + format_double(m.radius) + "," + format_double(m.init_enorm) + "," +
               format_double(m.final_enorm) + "," + (m.entered ? "1" : "0") + "\n";
    return out;
}

std::string pullback_csv(const PullbackEnsembleReport& rep, std::span<const double> horizons,
                         const std::string& hash) {
    std::string out = hash_line(hash);
    out += "t_from,t_to,mean_gap\n";
    for (std::size_t s = 0; s < rep.mean_gaps.size(); ++s)
        out += format_double(horizons[s]) + "," + format_double(horizons[s + 1]) + "," +
               format_double(rep.mean_gaps[s]) + "\n";
    return out;
}

std::string cloud_csv(const StateCloud& cloud, const Grid& g, const std::string& hash) {
    std::string out = hash_line(hash);
    out += g.dim == 1 ? "state,x,u,v\n" : "state,x,y,u,v\n";
    for (std::size_t s = 0; s < cloud.states.size(); ++s) {
        const State& st = cloud.states[s];
        for (std::size_t i = 0; i < g.cell_count(); ++i) {
            const auto c = g.center(i);
            out += std::to_string(s) + "," + format_double(c[0]);
            if (g.dim == 2) out += "," + format_double(c[1]);
            out += "," + format_double(st.u[i]) + "," + format_double(st.v[i]) + "\n";
        }
    }
    return out;
}

std::string lattice_family_csv(const LatticeFamily& fam, const std::string& hash) {
    std::string out = hash_line(hash);
    out += "member,cell,measure,value\n";
    auto emit = [&out](std::int64_t member, const LatticeFunction& f) {
        for (const LatticeEntry& e : f.entries)
            out += std::to_string(member) + "," + std::to_string(e.cell) + "," +
                   format_double(e.measure) + "," + format_double(e.value) + "\n";
    };
    for (std::size_t i = 0; i < fam.members.size(); ++i)
        emit(static_cast<std::int64_t>(i), fam.members[i]);
    emit(-1, fam.limit);
    return out;
}

namespace {

double parse_double(const std::string& tok, std::size_t line_no, const std::string& file) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError(file + ":" + std::to_string(line_no) + ": bad number '" + tok + "'");
    return v;
}

std::int64_t parse_int(const std::string& tok, std::size_t line_no, const std::string& file) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ConfigError(file + ":" + std::to_string(line_no) + ": bad integer '" + tok + "'");
    return v;
}

}  // namespace

LatticeFamily load_lattice_family_csv(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) throw ConfigError("cannot open: " + file.string());
    const std::string name = file.stem().string();
    std::vector<std::vector<LatticeEntry>> member_rows;
    std::vector<LatticeEntry> limit_rows;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            saw_header = true;
            if (line.rfind("member", 0) == 0) continue;  // header row
        }
        std::istringstream row(line);
        std::string tok;
        std::vector<std::string> toks;
        while (std::getline(row, tok, ',')) toks.push_back(tok);
        if (toks.size() != 4)
            throw ConfigError(file.string() + ":" + std::to_string(line_no) +
                              ": expected member,cell,measure,value");
        const std::int64_t member = parse_int(toks[0], line_no, file.string());
        LatticeEntry e{parse_int(toks[1], line_no, file.string()),
                       parse_double(toks[2], line_no, file.string()),
                       parse_double(toks[3], line_no, file.string())};
        if (member < -1)
            throw ConfigError(file.string() + ":" + std::to_string(line_no) +
                              ": member must be >= -1");
        if (member == -1) {
            limit_rows.push_back(e);
        } else {
            const auto idx = static_cast<std::size_t>(member);
            if (idx >= member_rows.size()) member_rows.resize(idx + 1);
            member_rows[idx].push_back(e);
        }
    }
    if (member_rows.empty()) throw ConfigError(file.string() + ": no member rows");
    LatticeFamily fam;
    fam.name = name;
    try {
        for (auto& rows : member_rows) fam.members.push_back(make_lattice_function(std::move(rows)));
        fam.limit = make_lattice_function(std::move(limit_rows));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(file.string() + ": " + e.what());
    }
    return fam;
}

}  // namespace stowave
