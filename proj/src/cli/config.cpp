#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace salem::cli {

namespace {

using nlohmann::json;

double parse_decimal(const std::string& text) {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) {
        throw std::invalid_argument("trailing characters");
    }
    return v;
}

// Decimal number, decimal string, or "a/b" fraction string.
double parse_weight(const json& w) {
    if (w.is_number()) {
        return w.get<double>();
    }
    if (!w.is_string()) {
        throw std::invalid_argument("weight must be a number or string");
    }
    const auto s = w.get<std::string>();
    if (const auto slash = s.find('/'); slash != std::string::npos) {
        return parse_decimal(s.substr(0, slash)) / parse_decimal(s.substr(slash + 1));
    }
    return parse_decimal(s);
}

std::vector<double> parse_weights(const json& doc, const std::string& field) {
    if (!doc.is_array()) {
        throw ConfigError(field + ": expected an array of weights");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        try {
            out.push_back(parse_weight(doc[i]));
        } catch (const std::exception& e) {
            throw ConfigError(field + "[" + std::to_string(i) + "]: " + e.what());
        }
    }
    return out;
}

std::vector<std::size_t> parse_table(const json& doc, const std::string& field) {
    if (!doc.is_array()) {
        throw ConfigError(field + ": expected an array of positive integers");
    }
    std::vector<std::size_t> out;
    for (const auto& v : doc) {
        if (!v.is_number_integer() || v.get<long long>() < 1) {
            throw ConfigError(field + ": expected positive integers");
        }
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

IndexSequence parse_perm(const json& doc) {
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
        throw ConfigError("perm: expected an object with a \"kind\" string");
    }
    const auto kind = doc["kind"].get<std::string>();
    try {
        if (kind == "identity") {
            return IndexSequence::identity();
        }
        if (kind == "finite") {
            if (!doc.contains("table")) {
                throw ConfigError("perm.table: missing");
            }
            return IndexSequence::finite(parse_table(doc["table"], "perm.table"));
        }
        if (kind == "block") {
            if (!doc.contains("b") || !doc["b"].is_number_integer() || doc["b"].get<long long>() < 1) {
                throw ConfigError("perm.b: expected a positive integer");
            }
            if (!doc.contains("map")) {
                throw ConfigError("perm.map: missing");
            }
            return IndexSequence::block(doc["b"].get<std::size_t>(), parse_table(doc["map"], "perm.map"));
        }
    } catch (const DomainError& e) {
        throw ConfigError(std::string("perm: ") + e.what());
    }
    throw ConfigError("perm.kind: unknown kind \"" + kind + "\"");
}

template <class T>
T build(const std::string& field, const std::vector<double>& weights) {
    try {
        return T(weights);
    } catch (const DomainError& e) {
        throw ConfigError(field + ": " + e.what());
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config: expected a JSON object");
    }
    for (const char* field : {"P", "R"}) {
        if (!doc.contains(field)) {
            throw ConfigError(std::string(field) + ": missing");
        }
    }
    auto P = build<ProbabilityVector>("P", parse_weights(doc["P"], "P"));
    auto R = build<CoefficientVector>("R", parse_weights(doc["R"], "R"));
    if (doc.contains("q")) {
        if (!doc["q"].is_number_integer() || doc["q"].get<long long>() != static_cast<long long>(P.radix())) {
            throw ConfigError("q: must be an integer equal to the length of P");
        }
    }
    if (R.radix() != P.radix()) {
        throw ConfigError("R: length must equal the radix of P");
    }
    IndexSequence perm = doc.contains("perm") ? parse_perm(doc["perm"]) : IndexSequence::identity();

    RunConfig cfg{GenSalemSpec(std::move(P), std::move(R), std::move(perm)), std::nullopt, 1e-12, 0};
    if (doc.contains("schedule")) {
        const auto& list = doc["schedule"];
        if (!list.is_array() || list.empty()) {
            throw ConfigError("schedule: expected a nonempty array of probability vectors");
        }
        std::vector<ProbabilityVector> vectors;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string field = "schedule[" + std::to_string(i) + "]";
            vectors.push_back(build<ProbabilityVector>(field, parse_weights(list[i], field)));
            if (vectors.back().radix() != cfg.spec.radix()) {
                throw ConfigError(field + ": radix differs from P");
            }
        }
        cfg.schedule = ProbabilitySchedule::periodic(std::move(vectors));
    }
    if (doc.contains("tol")) {
        if (!doc["tol"].is_number() || !(doc["tol"].get<double>() > 0.0)) {
            throw ConfigError("tol: expected a positive number");
        }
        cfg.tol = doc["tol"].get<double>();
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !(doc["seed"].is_number_integer() && doc["seed"].get<long long>() >= 0)) {
            throw ConfigError("seed: expected a nonnegative integer");
        }
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

std::vector<Digit> parse_digit_list(const std::string& text) {
    std::vector<Digit> out;
    if (text.empty()) {
        return out;
    }
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        Digit d = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), d);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
            throw PointParseError("bad digit \"" + item + "\"");
        }
        out.push_back(d);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace

DigitString parse_digit_literal(const std::string& text, unsigned radix) {
    constexpr std::string_view head = "digits:";
    constexpr std::string_view mid = ";tail:";
    if (text.rfind(head, 0) != 0) {
        throw PointParseError("digit literal must start with \"digits:\"");
    }
    const std::size_t sep = text.find(mid);
    if (sep == std::string::npos) {
        throw PointParseError("digit literal needs \";tail:\"");
    }
    auto prefix = parse_digit_list(text.substr(head.size(), sep - head.size()));
    const std::string tail = text.substr(sep + mid.size());
    DigitString::Tail policy;
    if (tail == "zeros") {
        policy = DigitString::Zeros{};
    } else if (tail == "max") {
        policy = DigitString::MaxDigits{};
    } else if (tail.rfind("periodic:", 0) == 0) {
        policy = DigitString::Periodic{parse_digit_list(tail.substr(9))};
    } else if (tail.rfind("seeded:", 0) == 0) {
        const std::string num = tail.substr(7);
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), seed);
        if (num.empty() || ec != std::errc{} || ptr != num.data() + num.size()) {
            throw PointParseError("bad seed \"" + num + "\"");
        }
        policy = DigitString::Seeded{seed, 0};
    } else {
        throw PointParseError("unknown tail \"" + tail + "\"");
    }
    try {
        return DigitString(radix, std::move(prefix), std::move(policy));
    } catch (const DomainError& e) {
        throw PointParseError(e.what());
    }
}

Point parse_point(const std::string& text, unsigned radix) {
    if (text.rfind("digits:", 0) == 0) {
        return parse_digit_literal(text, radix);
    }
    double x = 0.0;
    try {
        x = parse_decimal(text);
    } catch (const std::exception&) {
        throw PointParseError("cannot parse point \"" + text + "\"");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw PointParseError("point must lie in [0, 1]");
    }
    return x;
}

}  // namespace salem::cli
