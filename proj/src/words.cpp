#include "pants/words.hpp"

#include <charconv>
#include <sstream>

namespace pants {

MoveWord free_reduce(MoveWord w) {
    MoveWord out;
    out.reserve(w.size());
    for (const auto& letter : w) {
        if (!out.empty() && out.back().cancels(letter))
            out.pop_back();
        else
            out.push_back(letter);
    }
    return out;
}

MoveWord invert_word(const MoveWord& w) {
    MoveWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
    return out;
}

MoveLetter parse_letter(std::string_view token, const SupportTable& supports) {
    MoveLetter m;
    std::string_view rest = token;
    if (rest.empty()) fail(Err::Parse, "empty move token");
    if (rest.front() == 's')
        m.kind = MoveKind::S;
    else if (rest.front() == 'a')
        m.kind = MoveKind::A;
    else
        fail(Err::Parse, "move token must start with s or a: '" + std::string(token) + "'");
    rest.remove_prefix(1);

    std::size_t i = 0;
    while (i < rest.size() && (std::isdigit(static_cast<unsigned char>(rest[i])) ||
                               (i == 0 && rest[i] == '-')))
        ++i;
    if (i == 0) fail(Err::Parse, "move token needs a label: '" + std::string(token) + "'");
    {
        int label = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + i, label);
        if (ec != std::errc() || ptr != rest.data() + i)
            fail(Err::Parse, "bad label in move token '" + std::string(token) + "'");
        m.label = label;
    }
    rest.remove_prefix(i);

    if (!rest.empty() && rest.front() == '\'') {
        m.inverted = true;
        rest.remove_prefix(1);
    }
    // optional source slope "<p/q>>" then target ">p/q", support "@id"
    while (!rest.empty()) {
        if (rest.front() == '@') {
            auto end = rest.find_first_of("<>", 1);
            std::string id(rest.substr(1, end == std::string_view::npos ? end : end - 1));
            if (id.empty()) fail(Err::Parse, "empty support id in '" + std::string(token) + "'");
            m.support = id;
            if (auto it = supports.find(id); it != supports.end()) m.support_kind = it->second;
            rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
        } else if (rest.front() == '>') {
            auto end = rest.find_first_of("@<", 1);
            auto text = rest.substr(1, end == std::string_view::npos ? end : end - 1);
            m.to = parse_slope(text);
            rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
        } else if (rest.front() == '<') {
            auto end = rest.find_first_of("@>", 1);
            auto text = rest.substr(1, end == std::string_view::npos ? end : end - 1);
            m.from = parse_slope(text);
            rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
        } else {
            fail(Err::Parse, "trailing junk in move token '" + std::string(token) + "'");
        }
    }
    return m;
}

MoveWord parse_word(std::string_view line, const SupportTable& supports) {
    MoveWord out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos >= line.size()) break;
        std::size_t end = pos;
        while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
        try {
            out.push_back(parse_letter(line.substr(pos, end - pos), supports));
        } catch (const Error& e) {
            fail(Err::Parse, std::string(e.what()) + " (column " + std::to_string(pos + 1) + ")");
        }
        pos = end;
    }
    return out;
}

std::string to_string(const MoveLetter& l) {
    std::ostringstream os;
    os << to_string(l.kind) << l.label;
    if (l.inverted) os << '\'';
    if (l.from) os << '<' << to_string(*l.from);
    if (l.to) os << '>' << to_string(*l.to);
    if (!l.support.empty()) os << '@' << l.support;
    return os.str();
}

std::string to_string(const MoveWord& w) {
    std::string out;
    for (const auto& l : w) {
        if (!out.empty()) out += ' ';
        out += to_string(l);
    }
    return out;
}

} // namespace pants
