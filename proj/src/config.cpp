#include "rds/config.hpp"

#include "rds/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <map>
#include <set>

namespace rds::cli {

LiftMap LiftSpec::build() const {
    switch (form) {
    case Form::Sine: return LiftMap::sine(param);
    case Form::Rotation: return LiftMap::rotation(param);
    case Form::Fourier: return LiftMap::fourier(harmonics);
    }
    return LiftMap::sine(param);
}

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> cmds{"simulate", "lyapunov", "subperiods", "contract", "access",
                                               "sync",     "stability", "pullback", "verdict",  "sweep"};
    return cmds;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void parse_fail(int line, std::string_view key, const std::string& msg) {
    throw ConfigError(fmt::format("line {}: {}", line, msg), line, std::string(key));
}

[[noreturn]] void semantic_fail(std::string_view key, const std::string& msg) {
    throw ConfigError(fmt::format("key '{}': {}", key, msg), 0, std::string(key));
}

struct Cursor {
    std::string_view text;
    int line;
    std::string_view key;
};

double to_double(std::string_view s, const Cursor& c) {
    s = trim(s);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        parse_fail(c.line, c.key, fmt::format("expected a number for '{}', got '{}'", c.key, s));
    return v;
}

std::uint64_t to_uint(std::string_view s, const Cursor& c) {
    s = trim(s);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        parse_fail(c.line, c.key, fmt::format("expected a non-negative integer for '{}', got '{}'", c.key, s));
    return v;
}

bool to_bool(std::string_view s, const Cursor& c) {
    s = trim(s);
    if (s == "true") return true;
    if (s == "false") return false;
    parse_fail(c.line, c.key, fmt::format("expected true or false for '{}', got '{}'", c.key, s));
}

std::string to_string_value(std::string_view s, const Cursor& c) {
    s = trim(s);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    if (s.empty()) parse_fail(c.line, c.key, fmt::format("empty value for '{}'", c.key));
    return std::string(s);
}

// Splits the inside of a bracketed list at top-level commas.
std::vector<std::string_view> split_top_level(std::string_view s) {
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(' || s[i] == '[') ++depth;
        if (s[i] == ')' || s[i] == ']') --depth;
        if (s[i] == ',' && depth == 0) {
            parts.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    std::string_view last = trim(s.substr(start));
    if (!last.empty() || !parts.empty()) parts.push_back(last);
    return parts;
}

std::string_view unwrap(std::string_view s, char open, char close, const Cursor& c) {
    s = trim(s);
    if (s.size() < 2 || s.front() != open || s.back() != close)
        parse_fail(c.line, c.key, fmt::format("expected '{}...{}' for '{}', got '{}'", open, close, c.key, s));
    return s.substr(1, s.size() - 2);
}

std::vector<double> to_list(std::string_view s, const Cursor& c) {
    std::vector<double> out;
    for (std::string_view part : split_top_level(unwrap(s, '[', ']', c))) out.push_back(to_double(part, c));
    return out;
}

std::vector<Harmonic> to_harmonics(std::string_view s, const Cursor& c) {
    std::vector<Harmonic> out;
    for (std::string_view part : split_top_level(unwrap(s, '[', ']', c))) {
        auto fields = split_top_level(unwrap(part, '(', ')', c));
        if (fields.size() != 3) parse_fail(c.line, c.key, fmt::format("harmonic '{}' needs (j, a_j, b_j)", part));
        std::uint64_t j = to_uint(fields[0], c);
        if (j == 0 || j > 1000000) parse_fail(c.line, c.key, fmt::format("harmonic index {} out of range", j));
        out.push_back({static_cast<int>(j), to_double(fields[1], c), to_double(fields[2], c)});
    }
    return out;
}

LiftSpec to_lift(std::string_view s, const Cursor& c) {
    s = trim(s);
    LiftSpec spec;
    if (s == "fourier") {
        spec.form = LiftSpec::Form::Fourier;
        spec.param = 0.0;
        return spec;
    }
    auto open = s.find('(');
    if (open == std::string_view::npos || s.back() != ')')
        parse_fail(c.line, c.key, fmt::format("unrecognized lift '{}'", s));
    std::string_view name = trim(s.substr(0, open));
    std::string_view arg = trim(s.substr(open + 1, s.size() - open - 2));
    std::string_view expected;
    if (name == "sine") {
        spec.form = LiftSpec::Form::Sine;
        expected = "a";
    } else if (name == "rotation") {
        spec.form = LiftSpec::Form::Rotation;
        expected = "c";
    } else {
        parse_fail(c.line, c.key, fmt::format("unknown lift family '{}'", name));
    }
    auto eq = arg.find('=');
    if (eq == std::string_view::npos || trim(arg.substr(0, eq)) != expected)
        parse_fail(c.line, c.key, fmt::format("lift '{}' expects '{}=<number>'", name, expected));
    spec.param = to_double(arg.substr(eq + 1), c);
    return spec;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += fmt::format("{}{}", i ? ", " : "", v[i]);
    return out + "]";
}

std::string fmt_lift(const LiftSpec& l) {
    switch (l.form) {
    case LiftSpec::Form::Sine: return fmt::format("sine(a={})", l.param);
    case LiftSpec::Form::Rotation: return fmt::format("rotation(c={})", l.param);
    case LiftSpec::Form::Fourier: return "fourier";
    }
    return "fourier";
}

std::string fmt_harmonics(const std::vector<Harmonic>& hs) {
    std::string out = "[";
    for (std::size_t i = 0; i < hs.size(); ++i)
        out += fmt::format("{}({}, {}, {})", i ? ", " : "", hs[i].j, hs[i].sin_coeff, hs[i].cos_coeff);
    return out + "]";
}

struct Field {
    std::function<void(ExperimentConfig&, const Cursor&)> parse;
    std::function<std::string(const ExperimentConfig&)> print;
};

template <class T>
Field uint_field(T ExperimentConfig::*member) {
    return {[member](ExperimentConfig& cfg, const Cursor& c) { cfg.*member = static_cast<T>(to_uint(c.text, c)); },
            [member](const ExperimentConfig& cfg) { return fmt::format("{}", cfg.*member); }};
}

Field double_field(double ExperimentConfig::*member) {
    return {[member](ExperimentConfig& cfg, const Cursor& c) { cfg.*member = to_double(c.text, c); },
            [member](const ExperimentConfig& cfg) { return fmt::format("{}", cfg.*member); }};
}

Field list_field(std::vector<double> ExperimentConfig::*member) {
    return {[member](ExperimentConfig& cfg, const Cursor& c) { cfg.*member = to_list(c.text, c); },
            [member](const ExperimentConfig& cfg) { return fmt_list(cfg.*member); }};
}

Field string_field(std::string ExperimentConfig::*member) {
    return {[member](ExperimentConfig& cfg, const Cursor& c) { cfg.*member = to_string_value(c.text, c); },
            [member](const ExperimentConfig& cfg) { return cfg.*member; }};
}

// Ordered as echoed.
const std::vector<std::pair<std::string, Field>>& fields() {
    using C = ExperimentConfig;
    static const std::vector<std::pair<std::string, Field>> table{
        {"experiment", string_field(&C::experiment)},
        {"lift",
         {[](C& cfg, const Cursor& c) {
              auto harmonics = std::move(cfg.lift.harmonics);
              cfg.lift = to_lift(c.text, c);
              cfg.lift.harmonics = std::move(harmonics);
          },
          [](const C& cfg) { return fmt_lift(cfg.lift); }}},
        {"harmonics",
         {[](C& cfg, const Cursor& c) { cfg.lift.harmonics = to_harmonics(c.text, c); },
          [](const C& cfg) { return fmt_harmonics(cfg.lift.harmonics); }}},
        {"seed",
         {[](C& cfg, const Cursor& c) { cfg.seed = to_uint(c.text, c); },
          [](const C& cfg) { return fmt::format("{}", cfg.effective_seed()); }}},
        {"horizon", uint_field(&C::horizon)},
        {"n_samples", uint_field(&C::n_samples)},
        {"n_pairs", uint_field(&C::n_pairs)},
        {"record_every", uint_field(&C::record_every)},
        {"eps_sync", double_field(&C::eps_sync)},
        {"window", uint_field(&C::window)},
        {"lyapunov_steps", uint_field(&C::lyapunov_steps)},
        {"lyapunov_samples", uint_field(&C::lyapunov_samples)},
        {"quad_tol", double_field(&C::quad_tol)},
        {"subperiod_grid", uint_field(&C::subperiod_grid)},
        {"subperiod_tol", double_field(&C::subperiod_tol)},
        {"subperiod_exact",
         {[](C& cfg, const Cursor& c) { cfg.subperiod_exact = to_bool(c.text, c); },
          [](const C& cfg) { return std::string(cfg.subperiod_exact ? "true" : "false"); }}},
        {"access_sources", uint_field(&C::access_sources)},
        {"access_arcs", uint_field(&C::access_arcs)},
        {"arc_radius", double_field(&C::arc_radius)},
        {"access_horizon", uint_field(&C::access_horizon)},
        {"access_samples", uint_field(&C::access_samples)},
        {"contract_horizon", uint_field(&C::contract_horizon)},
        {"contract_samples", uint_field(&C::contract_samples)},
        {"stability_x", double_field(&C::stability_x)},
        {"stability_radii", list_field(&C::stability_radii)},
        {"containment_eps", double_field(&C::containment_eps)},
        {"containment_deltas", list_field(&C::containment_deltas)},
        {"pullback_T", uint_field(&C::pullback_T)},
        {"pullback_grid", uint_field(&C::pullback_grid)},
        {"pullback_streams", uint_field(&C::pullback_streams)},
        {"merge_radius", double_field(&C::merge_radius)},
        {"fixed_point_tol", double_field(&C::fixed_point_tol)},
        {"simulate_points", uint_field(&C::simulate_points)},
        {"simulate_steps", uint_field(&C::simulate_steps)},
        {"sweep_param", string_field(&C::sweep_param)},
        {"sweep_from", double_field(&C::sweep_from)},
        {"sweep_to", double_field(&C::sweep_to)},
        {"sweep_step", double_field(&C::sweep_step)},
        {"output", string_field(&C::output)},
    };
    return table;
}

void validate(const ExperimentConfig& c, const std::set<std::string>& seen) {
    const auto& cmds = known_commands();
    if (std::find(cmds.begin(), cmds.end(), c.experiment) == cmds.end())
        semantic_fail("experiment", fmt::format("unknown experiment '{}'", c.experiment));

    if (c.lift.form == LiftSpec::Form::Fourier) {
        if (!seen.count("harmonics")) semantic_fail("harmonics", "lift = fourier requires a harmonics list");
        try {
            (void)c.lift.build();
        } catch (const DomainError& e) {
            semantic_fail("harmonics", e.what());
        }
    } else if (seen.count("harmonics")) {
        semantic_fail("harmonics", "harmonics are only meaningful with lift = fourier");
    }

    auto positive = [](std::string_view key, double v) {
        if (!(v > 0.0)) semantic_fail(key, "must be positive");
    };
    positive("horizon", static_cast<double>(c.horizon));
    positive("n_samples", static_cast<double>(c.n_samples));
    positive("n_pairs", static_cast<double>(c.n_pairs));
    positive("record_every", static_cast<double>(c.record_every));
    positive("eps_sync", c.eps_sync);
    positive("window", static_cast<double>(c.window));
    positive("lyapunov_steps", static_cast<double>(c.lyapunov_steps));
    if (c.lyapunov_samples < 2) semantic_fail("lyapunov_samples", "needs at least 2 samples");
    positive("quad_tol", c.quad_tol);
    if (c.subperiod_grid < 256) semantic_fail("subperiod_grid", "must be >= 256");
    positive("subperiod_tol", c.subperiod_tol);
    if (c.access_sources < 4) semantic_fail("access_sources", "must be >= 4");
    if (c.access_arcs < 4) semantic_fail("access_arcs", "must be >= 4");
    if (!(c.arc_radius > 0.0 && c.arc_radius < 0.25)) semantic_fail("arc_radius", "must lie in (0, 1/4)");
    positive("access_horizon", static_cast<double>(c.access_horizon));
    positive("access_samples", static_cast<double>(c.access_samples));
    positive("contract_horizon", static_cast<double>(c.contract_horizon));
    positive("contract_samples", static_cast<double>(c.contract_samples));
    if (c.stability_radii.empty()) semantic_fail("stability_radii", "must not be empty");
    for (double r : c.stability_radii)
        if (!(r > 0.0 && r < 0.25)) semantic_fail("stability_radii", "radii must lie in (0, 1/4)");
    positive("containment_eps", c.containment_eps);
    if (c.containment_deltas.empty()) semantic_fail("containment_deltas", "must not be empty");
    for (double d : c.containment_deltas)
        if (!(d > 0.0 && d <= c.containment_eps))
            semantic_fail("containment_deltas", "each delta must satisfy 0 < delta <= containment_eps");
    positive("pullback_T", static_cast<double>(c.pullback_T));
    if (c.pullback_grid < 64) semantic_fail("pullback_grid", "must be >= 64");
    positive("pullback_streams", static_cast<double>(c.pullback_streams));
    if (!(c.merge_radius > 0.0 && c.merge_radius < 0.25)) semantic_fail("merge_radius", "must lie in (0, 1/4)");
    positive("fixed_point_tol", c.fixed_point_tol);
    positive("simulate_points", static_cast<double>(c.simulate_points));
    if (c.sweep_param != "a" && c.sweep_param != "c") semantic_fail("sweep_param", "must be 'a' or 'c'");
    positive("sweep_step", c.sweep_step);
    if (c.sweep_to < c.sweep_from) semantic_fail("sweep_to", "must be >= sweep_from");
}

} // namespace

ExperimentConfig parse_config(std::string_view text) {
    std::map<std::string, const Field*, std::less<>> index;
    for (const auto& [name, field] : fields()) index.emplace(name, &field);

    ExperimentConfig cfg;
    std::set<std::string> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        // ';' separates statements unless nested inside brackets.
        int depth = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i < line.size()) {
                if (line[i] == '(' || line[i] == '[') ++depth;
                if (line[i] == ')' || line[i] == ']') --depth;
                if (!(line[i] == ';' && depth == 0)) continue;
            }
            std::string_view stmt = trim(line.substr(start, i - start));
            start = i + 1;
            if (stmt.empty()) continue;
            auto eq = stmt.find('=');
            // `lift = sine(a=0.1)`: split at the first '='.
            if (eq == std::string_view::npos) parse_fail(line_no, "", fmt::format("expected 'key = value', got '{}'", stmt));
            std::string_view key = trim(stmt.substr(0, eq));
            std::string_view value = trim(stmt.substr(eq + 1));
            auto it = index.find(key);
            if (it == index.end()) parse_fail(line_no, key, fmt::format("unknown key '{}'", key));
            if (!seen.insert(std::string(key)).second) parse_fail(line_no, key, fmt::format("duplicate key '{}'", key));
            if (value.empty()) parse_fail(line_no, key, fmt::format("missing value for '{}'", key));
            it->second->parse(cfg, Cursor{value, line_no, key});
        }
        if (eol == text.size()) break;
    }
    validate(cfg, seen);
    return cfg;
}

std::string echo_config(const ExperimentConfig& config) {
    std::string out;
    for (const auto& [name, field] : fields()) {
        if (name == "harmonics" && config.lift.form != LiftSpec::Form::Fourier) continue;
        out += fmt::format("{} = {}\n", name, field.print(config));
    }
    return out;
}

} // namespace rds::cli
