#pragma once

#include <map>
#include <optional>
#include <string>

#include "qpart/error.hpp"

namespace qpart {

/// Named integer parameters (n, k, i, N, ...).
using Params = std::map<std::string, long>;

inline std::optional<long> get_param(const Params& p, const std::string& name)
{
    auto it = p.find(name);
    if (it == p.end()) return std::nullopt;
    return it->second;
}

inline long require_param(const Params& p, const std::string& name)
{
    auto v = get_param(p, name);
    if (!v) throw MissingParam("missing parameter '" + name + "'");
    return *v;
}

inline std::string params_str(const Params& p)
{
    std::string out;
    for (const auto& [k, v] : p) {
        if (!out.empty()) out += ",";
        out += k + "=" + std::to_string(v);
    }
    return out;
}

} // namespace qpart
