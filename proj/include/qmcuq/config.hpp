// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
//
// Minimal TOML-subset reader for study configuration files: top-level
// `key = value` pairs where value is a string, integer, float, boolean,
// or a flat array of these. Comments start with '#'. This covers the
// study grid schema; nested tables are intentionally unsupported.
#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qmcuq/errors.hpp"

namespace qmcuq {

struct ConfigValue {
	std::vector<std::string> items;  // scalars hold exactly one item
	bool is_array = false;

	const std::string& scalar() const
	{
		if (is_array || items.size() != 1)
			throw ParseError("config: expected scalar value");
		return items.front();
	}
};

class Config {
  public:
	static Config parse(std::istream& in)
	{
		Config cfg;
		std::string line;
		int lineno = 0;
		while (std::getline(in, line)) {
			++lineno;
			strip_comment(line);
			const std::string trimmed = trim(line);
			if (trimmed.empty()) continue;
			const auto eq = trimmed.find('=');
			if (eq == std::string::npos)
				throw ParseError("config line " + std::to_string(lineno) +
				                 ": expected key = value");
			const std::string key = trim(trimmed.substr(0, eq));
			const std::string value = trim(trimmed.substr(eq + 1));
			if (key.empty() || value.empty())
				throw ParseError("config line " + std::to_string(lineno) +
				                 ": empty key or value");
			cfg.values_[key] = parse_value(value, lineno);
		}
		return cfg;
	}

	static Config parse_file(const std::string& path)
	{
		std::ifstream in(path);
		if (!in) throw ParseError("cannot open config: " + path);
		return parse(in);
	}

	bool has(const std::string& key) const { return values_.count(key) != 0; }

	std::vector<std::string> strings(const std::string& key) const
	{
		return get(key).items;
	}

	std::vector<std::int64_t> ints(const std::string& key) const
	{
		std::vector<std::int64_t> out;
		for (const auto& s : get(key).items) out.push_back(to_int(s, key));
		return out;
	}

	std::string string(const std::string& key) const { return get(key).scalar(); }
	std::int64_t integer(const std::string& key) const
	{
		return to_int(get(key).scalar(), key);
	}
	double number(const std::string& key) const
	{
		try {
			return std::stod(get(key).scalar());
		} catch (const std::exception&) {
			throw ParseError("config: '" + key + "' is not a number");
		}
	}

	std::string string_or(const std::string& key, const std::string& fallback) const
	{
		return has(key) ? string(key) : fallback;
	}
	std::int64_t integer_or(const std::string& key, std::int64_t fallback) const
	{
		return has(key) ? integer(key) : fallback;
	}
	double number_or(const std::string& key, double fallback) const
	{
		return has(key) ? number(key) : fallback;
	}

  private:
	std::map<std::string, ConfigValue> values_;

	const ConfigValue& get(const std::string& key) const
	{
		auto it = values_.find(key);
		if (it == values_.end()) throw ParseError("config: missing key '" + key + "'");
		return it->second;
	}

	static std::int64_t to_int(const std::string& s, const std::string& key)
	{
		try {
			std::size_t pos = 0;
			const std::int64_t v = std::stoll(s, &pos);
			if (pos != s.size()) throw std::invalid_argument(s);
			return v;
		} catch (const std::exception&) {
			throw ParseError("config: '" + key + "' is not an integer");
		}
	}

	static void strip_comment(std::string& line)
	{
		bool quoted = false;
		for (std::size_t i = 0; i < line.size(); ++i) {
			if (line[i] == '"') quoted = !quoted;
			if (line[i] == '#' && !quoted) {
				line.erase(i);
				return;
			}
		}
	}

	static std::string trim(const std::string& s)
	{
		const auto a = s.find_first_not_of(" \t\r");
		if (a == std::string::npos) return "";
		const auto b = s.find_last_not_of(" \t\r");
		return s.substr(a, b - a + 1);
	}

	static std::string unquote(const std::string& s)
	{
		if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
			return s.substr(1, s.size() - 2);
		return s;
	}

	static ConfigValue parse_value(const std::string& value, int lineno)
	{
		ConfigValue v;
		if (value.front() == '[') {
			if (value.back() != ']')
				throw ParseError("config line " + std::to_string(lineno) +
				                 ": unterminated array");
			v.is_array = true;
			std::string body = value.substr(1, value.size() - 2);
			std::istringstream items(body);
			std::string item;
			while (std::getline(items, item, ','))
				if (const std::string t = trim(item); !t.empty())
					v.items.push_back(unquote(t));
		} else {
			v.items.push_back(unquote(value));
		}
		return v;
	}
};

}  // namespace qmcuq
