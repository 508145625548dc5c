#include "dofrac/problem_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "dofrac/errors.hpp"
#include "dofrac/format.hpp"

namespace dofrac {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

struct Section {
    std::map<std::string, Entry> entries;
    int line = 0;
    bool present = false;
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& value, const std::string& key, int line) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != value.size())
        throw ParseError("malformed number '" + value + "' for key '" + key + "'", key, line);
    return v;
}

int parse_integer(const std::string& value, const std::string& key, int line) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(value, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != value.size())
        throw ParseError("malformed integer '" + value + "' for key '" + key + "'", key, line);
    return static_cast<int>(v);
}

class SectionReader {
public:
    SectionReader(Section& s, std::string name) : s_(s), name_(std::move(name)) {}

    bool has(const std::string& key) const { return s_.entries.count(key) != 0; }

    const Entry& require(const std::string& key) const {
        auto it = s_.entries.find(key);
        if (it == s_.entries.end())
            throw ParseError("missing key '" + key + "' in section [" + name_ + "]", key,
                             s_.line);
        it->second.used = true;
        return it->second;
    }

    const Entry* optional(const std::string& key) const {
        auto it = s_.entries.find(key);
        if (it == s_.entries.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    void reject_unused() const {
        for (const auto& [key, entry] : s_.entries)
            if (!entry.used)
                throw ParseError("unknown key '" + key + "' in section [" + name_ + "]", key,
                                 entry.line);
    }

private:
    Section& s_;
    std::string name_;
};

std::vector<Atom> parse_atoms(const std::string& value, int line) {
    std::vector<Atom> atoms;
    if (trim(value).empty()) return atoms;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string pair = trim(item);
        const auto colon = pair.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 >= pair.size())
            throw ParseError("atom '" + pair + "' is not of the form coef:order", "atoms",
                             line);
        atoms.push_back({parse_number(trim(pair.substr(0, colon)), "atoms", line),
                         parse_number(trim(pair.substr(colon + 1)), "atoms", line)});
    }
    return atoms;
}

OrderWeight parse_weight(Section& section, const std::string& name) {
    SectionReader reader(section, name);
    const Entry& kind = reader.require("kind");
    OrderWeight out = AtomicWeight{};
    try {
        if (kind.value == "atomic") {
            const Entry& atoms = reader.require("atoms");
            out = make_atomic(parse_atoms(atoms.value, atoms.line));
        } else if (kind.value == "continuous") {
            const Entry& density = reader.require("density");
            const Entry& support = reader.require("support");
            const auto colon = support.value.find(':');
            if (colon == std::string::npos)
                throw ParseError("support must be of the form lo:hi", "support", support.line);
            const double lo = parse_number(trim(support.value.substr(0, colon)), "support",
                                           support.line);
            const double hi = parse_number(trim(support.value.substr(colon + 1)), "support",
                                           support.line);
            out = continuous_from_tag(density.value, lo, hi);
        } else if (kind.value == "exponential") {
            const Entry& base = reader.require("base");
            out = make_exponential(parse_number(base.value, "base", base.line));
        } else {
            throw ParseError("unknown weight kind '" + kind.value + "'", "kind", kind.line);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(e.what(), "kind", kind.line);
    }
    reader.reject_unused();
    return out;
}

ForcingTerm parse_forcing(Section& section) {
    SectionReader reader(section, "forcing");
    const Entry& kind = reader.require("kind");
    ForcingTerm out;
    try {
        if (kind.value == "zero") {
            out = make_zero_forcing();
        } else if (kind.value == "time_only") {
            out = make_time_forcing(reader.require("g").value);
        } else if (kind.value == "power_bound") {
            const Entry& h = reader.require("h");
            const Entry& alpha = reader.require("alpha");
            out = make_power_bound_forcing(h.value,
                                           parse_number(alpha.value, "alpha", alpha.line));
        } else if (kind.value == "lipschitz") {
            out = make_lipschitz_forcing(reader.require("h").value);
        } else if (kind.value == "pendulum") {
            const Entry& amp = reader.require("amp");
            out = make_pendulum_forcing(parse_number(amp.value, "amp", amp.line));
        } else {
            throw ParseError("unknown forcing kind '" + kind.value + "'", "kind", kind.line);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(e.what(), "kind", kind.line);
    }
    reader.reject_unused();
    return out;
}

} // namespace

ParsedProblem parse_problem_text(const std::string& text) {
    std::map<std::string, Section> sections;
    for (const char* name : {"phi1", "phi2", "forcing", "initial", "run"})
        sections[name] = Section{};

    std::istringstream in(text);
    std::string raw;
    std::string current;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("malformed section header '" + line + "'", "", line_no);
            const std::string name = trim(line.substr(1, line.size() - 2));
            auto it = sections.find(name);
            if (it == sections.end())
                throw ParseError("unknown section [" + name + "]", name, line_no);
            if (it->second.present)
                throw ParseError("duplicate section [" + name + "]", name, line_no);
            it->second.present = true;
            it->second.line = line_no;
            current = name;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value', got '" + line + "'", "", line_no);
        if (current.empty())
            throw ParseError("key outside any section", trim(line.substr(0, eq)), line_no);
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ParseError("empty key", "", line_no);
        auto [it, inserted] = sections[current].entries.emplace(
            key, Entry{trim(line.substr(eq + 1)), line_no, false});
        if (!inserted)
            throw ParseError("duplicate key '" + key + "' in section [" + current + "]", key,
                             line_no);
    }
    for (const auto& [name, section] : sections)
        if (!section.present)
            throw ParseError("missing section [" + name + "]", name, line_no + 1);

    ParsedProblem out;
    out.spec.phi1 = parse_weight(sections["phi1"], "phi1");
    out.spec.phi2 = parse_weight(sections["phi2"], "phi2");
    out.spec.forcing = parse_forcing(sections["forcing"]);

    {
        SectionReader initial(sections["initial"], "initial");
        const Entry& y0 = initial.require("y0");
        const Entry& v0 = initial.require("v0");
        out.spec.y0 = parse_number(y0.value, "y0", y0.line);
        out.spec.v0 = parse_number(v0.value, "v0", v0.line);
        initial.reject_unused();
    }
    {
        SectionReader run(sections["run"], "run");
        const Entry& horizon = run.require("horizon");
        out.run.horizon = parse_number(horizon.value, "horizon", horizon.line);
        if (!(out.run.horizon > 0.0))
            throw ParseError("horizon must be positive", "horizon", horizon.line);
        const Entry& n_steps = run.require("n_steps");
        out.run.n_steps = parse_integer(n_steps.value, "n_steps", n_steps.line);
        if (out.run.n_steps < 2)
            throw ParseError("n_steps must be at least 2", "n_steps", n_steps.line);
        if (const Entry* tol = run.optional("tol")) {
            out.run.tol = parse_number(tol->value, "tol", tol->line);
            if (!(out.run.tol > 0.0)) throw ParseError("tol must be positive", "tol", tol->line);
        }
        if (const Entry* mi = run.optional("max_iter")) {
            out.run.max_iter = parse_integer(mi->value, "max_iter", mi->line);
            if (out.run.max_iter < 1)
                throw ParseError("max_iter must be at least 1", "max_iter", mi->line);
        }
        if (const Entry* damping = run.optional("damping")) {
            out.run.damping = parse_number(damping->value, "damping", damping->line);
            if (!(out.run.damping > 0.0 && out.run.damping <= 1.0))
                throw ParseError("damping must lie in (0,1]", "damping", damping->line);
        }
        int radius_line = sections["run"].line;
        if (const Entry* r = run.optional("ball_radius")) {
            out.run.ball_radius = parse_number(r->value, "ball_radius", r->line);
            radius_line = r->line;
        }
        if (!(out.run.ball_radius > std::max(std::abs(out.spec.y0), std::abs(out.spec.v0))))
            throw ParseError("ball_radius must exceed max(|y0|, |v0|)", "ball_radius",
                             radius_line);
        run.reject_unused();
    }
    out.spec.horizon = out.run.horizon;
    out.spec.ball_radius = out.run.ball_radius;
    return out;
}

ParsedProblem parse_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open problem file: " + path, "", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str());
}

namespace {

void emit_weight(std::ostream& out, const char* name, const OrderWeight& w) {
    out << "[" << name << "]\n";
    if (const auto* a = std::get_if<AtomicWeight>(&w)) {
        out << "kind = atomic\natoms =";
        for (size_t i = 0; i < a->atoms.size(); ++i)
            out << (i == 0 ? " " : ", ") << format_double(a->atoms[i].coef) << ":"
                << format_double(a->atoms[i].order);
        out << "\n";
    } else if (const auto* c = std::get_if<ContinuousWeight>(&w)) {
        out << "kind = continuous\ndensity = " << c->tag << "\nsupport = " << format_double(c->lo)
            << ":" << format_double(c->hi) << "\n";
    } else {
        out << "kind = exponential\nbase = "
            << format_double(std::get<ExponentialWeight>(w).base) << "\n";
    }
}

} // namespace

std::string emit_problem(const ParsedProblem& p) {
    std::ostringstream out;
    emit_weight(out, "phi1", p.spec.phi1);
    out << "\n";
    emit_weight(out, "phi2", p.spec.phi2);
    out << "\n[forcing]\nkind = " << to_string(p.spec.forcing.kind) << "\n";
    switch (p.spec.forcing.kind) {
        case ForcingKind::zero: break;
        case ForcingKind::time_only: out << "g = " << p.spec.forcing.tag << "\n"; break;
        case ForcingKind::power_bound:
            out << "h = " << p.spec.forcing.tag << "\nalpha = "
                << format_double(p.spec.forcing.alpha) << "\n";
            break;
        case ForcingKind::lipschitz: out << "h = " << p.spec.forcing.tag << "\n"; break;
        case ForcingKind::pendulum:
            out << "amp = " << format_double(p.spec.forcing.amp) << "\n";
            break;
    }
    out << "\n[initial]\ny0 = " << format_double(p.spec.y0) << "\nv0 = "
        << format_double(p.spec.v0) << "\n";
    out << "\n[run]\nhorizon = " << format_double(p.run.horizon) << "\nn_steps = "
        << p.run.n_steps << "\ntol = " << format_double(p.run.tol) << "\nmax_iter = "
        << p.run.max_iter << "\ndamping = " << format_double(p.run.damping)
        << "\nball_radius = " << format_double(p.run.ball_radius) << "\n";
    return out.str();
}

} // namespace dofrac
