// Copyright 2026 The dgd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dgd/errors.hpp"

namespace dgd::harness {

/// Flat `key = value` configuration. `#` starts a comment; lists are
/// comma-separated.
class KeyValueConfig {
 public:
    static KeyValueConfig parse(std::istream &in, const std::string &source = "<config>") {
        KeyValueConfig cfg;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            const std::string body = trim(line);
            if (body.empty()) {
                continue;
            }
            const auto eq = body.find('=');
            if (eq == std::string::npos) {
                throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
            }
            std::string key = trim(body.substr(0, eq));
            std::string value = trim(body.substr(eq + 1));
            if (key.empty()) {
                throw ConfigError(source + ":" + std::to_string(line_no) + ": empty key");
            }
            cfg.entries_[std::move(key)] = std::move(value);
        }
        return cfg;
    }

    static KeyValueConfig load(const std::string &path) {
        std::ifstream in(path);
        if (!in) {
            throw ConfigError("cannot open config file '" + path + "'");
        }
        return parse(in, path);
    }

    static KeyValueConfig from_string(const std::string &text) {
        std::istringstream in(text);
        return parse(in);
    }

    void set(const std::string &key, const std::string &value) { entries_[key] = value; }

    /// Applies a `key=value` override.
    void set_assignment(const std::string &assignment) {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("override '" + assignment + "' is not of the form key=value");
        }
        set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
    }

    bool has(const std::string &key) const { return entries_.count(key) != 0; }

    void require_known(const std::set<std::string> &allowed) const {
        for (const auto &[key, value] : entries_) {
            if (!allowed.count(key)) {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    }

    double get_double(const std::string &key, std::optional<double> fallback = std::nullopt) const {
        const auto text = lookup(key, fallback.has_value());
        if (!text) {
            return *fallback;
        }
        return to_double(key, *text);
    }

    int64_t get_int(const std::string &key, std::optional<int64_t> fallback = std::nullopt) const {
        const auto text = lookup(key, fallback.has_value());
        if (!text) {
            return *fallback;
        }
        return to_int(key, *text);
    }

    uint64_t get_seed(const std::string &key, std::optional<uint64_t> fallback = std::nullopt) const {
        const auto text = lookup(key, fallback.has_value());
        if (!text) {
            return *fallback;
        }
        std::size_t used = 0;
        uint64_t v = 0;
        try {
            v = std::stoull(*text, &used, 0);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != text->size() || text->front() == '-') {
            throw ConfigError("config key '" + key + "': expected an unsigned integer, got '" + *text + "'");
        }
        return v;
    }

    std::string get_string(const std::string &key, const std::string &fallback) const {
        const auto text = lookup(key, true);
        return text ? *text : fallback;
    }

    bool get_bool(const std::string &key, bool fallback) const {
        const auto text = lookup(key, true);
        if (!text) {
            return fallback;
        }
        if (*text == "true" || *text == "1" || *text == "yes") {
            return true;
        }
        if (*text == "false" || *text == "0" || *text == "no") {
            return false;
        }
        throw ConfigError("config key '" + key + "': expected a boolean, got '" + *text + "'");
    }

    std::vector<double> get_double_list(const std::string &key) const {
        std::vector<double> out;
        for (const auto &item : split(*lookup(key, false))) {
            out.push_back(to_double(key, item));
        }
        return out;
    }

    std::vector<int64_t> get_int_list(const std::string &key) const {
        std::vector<int64_t> out;
        for (const auto &item : split(*lookup(key, false))) {
            out.push_back(to_int(key, item));
        }
        return out;
    }

 private:
    static std::string trim(std::string_view s) {
        const auto first = s.find_first_not_of(" \t\r\n");
        if (first == std::string_view::npos) {
            return {};
        }
        const auto last = s.find_last_not_of(" \t\r\n");
        return std::string(s.substr(first, last - first + 1));
    }

    static std::vector<std::string> split(const std::string &text) {
        std::vector<std::string> items;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            items.push_back(trim(item));
        }
        return items;
    }

    std::optional<std::string> lookup(const std::string &key, bool optional) const {
        const auto it = entries_.find(key);
        if (it == entries_.end()) {
            if (optional) {
                return std::nullopt;
            }
            throw ConfigError("missing required config key '" + key + "'");
        }
        return it->second;
    }

    static double to_double(const std::string &key, const std::string &text) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != text.size()) {
            throw ConfigError("config key '" + key + "': expected a number, got '" + text + "'");
        }
        return v;
    }

    static int64_t to_int(const std::string &key, const std::string &text) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(text, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != text.size()) {
            throw ConfigError("config key '" + key + "': expected an integer, got '" + text + "'");
        }
        return v;
    }

    std::map<std::string, std::string> entries_;
};

}  // namespace dgd::harness
