#include "motifscan/pattern.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "motifscan/util.hpp"

namespace motifscan {

RoleSet RoleSet::parse(std::string_view text) {
    text = trim(text);
    if (text == "*") return all();
    RoleSet s;
    s.mask_ = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const auto token = trim(text.substr(start, comma == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : comma - start));
        if (token.size() != 1)
            throw std::runtime_error("bad role set token '" + std::string(token) + "' in '" +
                                     std::string(text) + "'");
        s.mask_ |= bit(role_from_letter(token[0]));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (s.mask_ == 0) throw std::runtime_error("empty role set");
    return s;
}

std::string RoleSet::to_string() const {
    if (is_all()) return "*";
    std::string out;
    for (NodeRole r : {NodeRole::Excitatory, NodeRole::Inhibitory, NodeRole::Other}) {
        if (!contains(r)) continue;
        if (!out.empty()) out += ',';
        out += role_letter(r);
    }
    return out;
}

std::string_view match_mode_name(MatchMode m) {
    return m == MatchMode::Induced ? "induced" : "mono";
}

MotifPattern::MotifPattern(std::vector<std::string> slot_names, std::vector<RoleSet> slot_roles,
                           std::vector<std::pair<SlotIndex, SlotIndex>> edges, MatchMode mode)
    : slot_names_(std::move(slot_names)),
      slot_roles_(std::move(slot_roles)),
      edges_(std::move(edges)),
      mode_(mode) {
    const std::size_t k = slot_names_.size();
    if (k < 2 || k > kMaxSlots)
        throw std::runtime_error("pattern must have between 2 and " + std::to_string(kMaxSlots) +
                                 " slots, got " + std::to_string(k));
    if (slot_roles_.size() != k) throw std::runtime_error("slot/roleset count mismatch");
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (slot_names_[i] == slot_names_[j])
                throw std::runtime_error("duplicate slot '" + slot_names_[i] + "'");

    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const auto& [a, b] : edges_) {
        if (a >= k || b >= k) throw std::runtime_error("pattern edge slot out of range");
        if (a == b)
            throw std::runtime_error("self-edge on slot '" + slot_names_[a] + "' not allowed");
        out_mask_[a] |= static_cast<std::uint16_t>(1u << b);
        in_mask_[b] |= static_cast<std::uint16_t>(1u << a);
    }

    // Automorphisms: backtracking over role- and degree-compatible images,
    // verifying edge preservation incrementally. k <= 10 keeps this trivial.
    SlotPermutation perm(k, 0);
    std::uint16_t used = 0;
    auto compatible = [&](SlotIndex a, SlotIndex b) {
        return slot_roles_[a] == slot_roles_[b] && out_degree(a) == out_degree(b) &&
               in_degree(a) == in_degree(b);
    };
    auto edges_consistent = [&](SlotIndex depth, SlotIndex image) {
        for (SlotIndex j = 0; j < depth; ++j) {
            if (has_edge(depth, j) != has_edge(image, perm[j])) return false;
            if (has_edge(j, depth) != has_edge(perm[j], image)) return false;
        }
        return true;
    };
    auto search = [&](auto&& self, SlotIndex depth) -> void {
        if (depth == k) {
            automorphisms_.push_back(perm);
            return;
        }
        for (SlotIndex image = 0; image < k; ++image) {
            if (used >> image & 1u) continue;
            if (!compatible(depth, image)) continue;
            if (!edges_consistent(depth, image)) continue;
            perm[depth] = image;
            used |= static_cast<std::uint16_t>(1u << image);
            self(self, static_cast<SlotIndex>(depth + 1));
            used &= static_cast<std::uint16_t>(~(1u << image));
        }
    };
    search(search, 0);
}

int MotifPattern::out_degree(SlotIndex a) const { return std::popcount(out_mask_[a]); }
int MotifPattern::in_degree(SlotIndex a) const { return std::popcount(in_mask_[a]); }

int MotifPattern::find_slot(std::string_view name) const {
    for (std::size_t i = 0; i < slot_names_.size(); ++i)
        if (slot_names_[i] == name) return static_cast<int>(i);
    return -1;
}

MotifPattern MotifPattern::with_mode(MatchMode mode) const {
    return MotifPattern(slot_names_, slot_roles_, edges_, mode);
}

bool MotifPattern::operator==(const MotifPattern& other) const {
    return slot_names_ == other.slot_names_ && slot_roles_ == other.slot_roles_ &&
           edges_ == other.edges_ && mode_ == other.mode_;
}

MotifPattern parse_pattern(std::string_view text) {
    std::vector<std::string> names;
    std::vector<RoleSet> roles;
    std::vector<std::pair<SlotIndex, SlotIndex>> edges;
    bool mode_seen = false;
    MatchMode mode = MatchMode::Induced;

    auto find_name = [&](std::string_view name) -> int {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        return -1;
    };

    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::istringstream words{std::string(line)};
        std::string keyword, arg1, arg2, extra;
        words >> keyword >> arg1 >> arg2;
        const bool trailing = static_cast<bool>(words >> extra);
        auto fail = [&](const std::string& msg) {
            throw std::runtime_error("pattern line " + std::to_string(line_no) + ": " + msg);
        };

        if (keyword == "mode") {
            if (mode_seen) fail("more than one mode line");
            if (!arg2.empty() || trailing) fail("mode takes one argument");
            if (arg1 == "induced") mode = MatchMode::Induced;
            else if (arg1 == "mono") mode = MatchMode::Monomorphic;
            else fail("mode must be 'induced' or 'mono', got '" + arg1 + "'");
            mode_seen = true;
        } else if (keyword == "node") {
            if (arg1.empty() || arg2.empty() || trailing) fail("expected: node <name> <roleset>");
            if (find_name(arg1) >= 0) fail("duplicate slot '" + arg1 + "'");
            if (names.size() >= kMaxSlots) fail("too many slots (max " + std::to_string(kMaxSlots) + ")");
            names.push_back(arg1);
            roles.push_back(RoleSet::parse(arg2));
        } else if (keyword == "edge") {
            if (arg1.empty() || arg2.empty() || trailing) fail("expected: edge <src> <dst>");
            const int a = find_name(arg1);
            const int b = find_name(arg2);
            if (a < 0) fail("unknown slot '" + arg1 + "' in edge");
            if (b < 0) fail("unknown slot '" + arg2 + "' in edge");
            if (a == b) fail("self-edge on slot '" + arg1 + "'");
            edges.emplace_back(static_cast<SlotIndex>(a), static_cast<SlotIndex>(b));
        } else {
            fail("unknown keyword '" + keyword + "'");
        }
    }

    if (!mode_seen) throw std::runtime_error("pattern is missing the mode line");
    return MotifPattern(std::move(names), std::move(roles), std::move(edges), mode);
}

std::string render_pattern(const MotifPattern& p) {
    std::ostringstream out;
    out << "mode " << match_mode_name(p.mode()) << '\n';
    for (int i = 0; i < p.slot_count(); ++i)
        out << "node " << p.slot_name(static_cast<SlotIndex>(i)) << ' '
            << p.slot_roles(static_cast<SlotIndex>(i)).to_string() << '\n';
    for (const auto& [a, b] : p.edges())
        out << "edge " << p.slot_name(a) << ' ' << p.slot_name(b) << '\n';
    return out.str();
}

MotifPattern load_pattern_file(const std::filesystem::path& path) {
    return parse_pattern(read_file(path));
}

namespace {

// Slot order E1,E2,E3,E4,XOR,INH.
enum Slot : SlotIndex { E1, E2, E3, E4, XOR, INH };

std::vector<std::pair<SlotIndex, SlotIndex>> builtin_edges(BuiltinPattern id) {
    std::vector<std::pair<SlotIndex, SlotIndex>> edges = {
        {E1, E2}, {E1, INH}, {E3, INH}, {E3, E4}, {INH, E2}, {INH, E4}, {E2, XOR}, {E4, XOR},
    };
    if (id == BuiltinPattern::StrictXor) return edges;
    edges.insert(edges.end(), {{XOR, E2}, {XOR, E4}, {E2, INH}, {E4, INH}, {INH, E1}, {INH, E3}});
    if (id == BuiltinPattern::ExtendedFullFeedback) return edges;
    std::erase(edges, std::pair<SlotIndex, SlotIndex>{E2, INH});
    std::erase(edges, std::pair<SlotIndex, SlotIndex>{INH, E1});
    return edges;
}

} // namespace

MotifPattern builtin_pattern(BuiltinPattern id, RoleProfile profile, MatchMode mode) {
    std::vector<std::string> names = {"E1", "E2", "E3", "E4", "XOR", "INH"};
    std::vector<RoleSet> roles(6, RoleSet::all());
    if (profile == RoleProfile::True) {
        for (SlotIndex s : {E1, E2, E3, E4}) roles[s] = RoleSet::of({NodeRole::Excitatory});
        roles[INH] = RoleSet::of({NodeRole::Inhibitory});
    } else if (profile == RoleProfile::TrueWithOther) {
        for (SlotIndex s : {E1, E2, E3, E4})
            roles[s] = RoleSet::of({NodeRole::Excitatory, NodeRole::Other});
        roles[INH] = RoleSet::of({NodeRole::Inhibitory, NodeRole::Other});
    }
    return MotifPattern(std::move(names), std::move(roles), builtin_edges(id), mode);
}

MotifPattern builtin_pattern(BuiltinPattern id, RoleProfile profile) {
    const MatchMode mode =
        id == BuiltinPattern::StrictXor ? MatchMode::Induced : MatchMode::Monomorphic;
    return builtin_pattern(id, profile, mode);
}

std::string_view builtin_pattern_name(BuiltinPattern id) {
    switch (id) {
        case BuiltinPattern::StrictXor: return "strict-xor";
        case BuiltinPattern::ExtendedFullFeedback: return "extended-full-feedback";
        case BuiltinPattern::ExtendedAsymFeedback: return "extended-asym-feedback";
    }
    return "?";
}

std::string_view role_profile_name(RoleProfile p) {
    switch (p) {
        case RoleProfile::Unconstrained: return "unconstrained";
        case RoleProfile::True: return "true";
        case RoleProfile::TrueWithOther: return "true-with-other";
    }
    return "?";
}

} // namespace motifscan
