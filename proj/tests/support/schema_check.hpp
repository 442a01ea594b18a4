#pragma once

// Just enough of JSON Schema draft-07 to validate the summaries the CLI
// prints: type (possibly a list), enum, required, properties,
// additionalProperties:false, items, minimum.

#include <string>
#include <vector>

#include "json.hpp"

namespace testsupport {

using nlohmann::json;

inline bool type_matches(const std::string& type, const json& value) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "number") return value.is_number();
    return false;
}

inline void collect_violations(const json& schema, const json& value, const std::string& path,
                               std::vector<std::string>& out) {
    if (schema.contains("enum")) {
        bool hit = false;
        for (const json& candidate : schema["enum"])
            if (candidate == value) hit = true;
        if (!hit) out.push_back(path + ": not in enum");
        return;
    }
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(t.get<std::string>(), value);
        } else {
            for (const json& alt : t)
                if (type_matches(alt.get<std::string>(), value)) ok = true;
        }
        if (!ok) {
            out.push_back(path + ": wrong type (got " + std::string(value.type_name()) + ")");
            return;
        }
    }
    if (value.is_null()) return; // nullable alternative matched; nothing inside to check
    if (schema.contains("minimum") && value.is_number()) {
        if (value.get<double>() < schema["minimum"].get<double>())
            out.push_back(path + ": below minimum");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const json& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    out.push_back(path + ": missing required key " + key.get<std::string>());
        const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
        bool closed = schema.contains("additionalProperties") &&
                      schema["additionalProperties"].is_boolean() &&
                      !schema["additionalProperties"].get<bool>();
        for (const auto& [key, child] : value.items()) {
            if (props && props->contains(key)) {
                collect_violations((*props)[key], child, path + "." + key, out);
            } else if (closed) {
                out.push_back(path + ": unexpected key " + key);
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const json& child : value)
            collect_violations(schema["items"], child, path + "[" + std::to_string(i++) + "]", out);
    }
}

inline std::vector<std::string> schema_violations(const json& schema, const json& value) {
    std::vector<std::string> out;
    collect_violations(schema, value, "$", out);
    return out;
}

} // namespace testsupport
