#include "metachain/chain_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace metachain {

namespace {

using json = nlohmann::ordered_json;

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> allowed,
                           const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* name : allowed)
            if (it.key() == name) known = true;
        if (!known)
            throw ParseError("unknown field \"" + it.key() + "\" in " + where);
    }
}

double require_number(const json& obj, const char* field, const std::string& where) {
    if (!obj.contains(field))
        throw ParseError("missing field \"" + std::string(field) + "\" in " + where);
    if (!obj[field].is_number())
        throw ParseError("field \"" + std::string(field) + "\" in " + where +
                         " must be a number");
    return obj[field].get<double>();
}

} // namespace

ChainSpec parse_chain_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("chain file must be a JSON object");
    reject_unknown_fields(doc, {"states", "rates"}, "chain file");
    if (!doc.contains("states") || !doc["states"].is_array())
        throw ParseError("missing or invalid \"states\" array");
    if (!doc.contains("rates") || !doc["rates"].is_array())
        throw ParseError("missing or invalid \"rates\" array");

    std::vector<std::string> labels;
    for (const auto& s : doc["states"]) {
        if (!s.is_string()) throw ParseError("state labels must be strings");
        labels.push_back(s.get<std::string>());
    }
    ChainSpec spec = make_chain(std::move(labels));
    const int n = spec.size();

    int idx = 0;
    for (const auto& entry : doc["rates"]) {
        const std::string where = "rates[" + std::to_string(idx++) + "]";
        if (!entry.is_object()) throw ParseError(where + " must be an object");
        reject_unknown_fields(entry, {"from", "to", "alpha", "beta", "gamma"}, where);
        int from = static_cast<int>(require_number(entry, "from", where));
        int to = static_cast<int>(require_number(entry, "to", where));
        if (from < 0 || from >= n || to < 0 || to >= n)
            throw ParseError(where + ": state index out of range");
        if (from == to) throw ParseError(where + ": diagonal rates are not allowed");
        double alpha = require_number(entry, "alpha", where);
        double beta = require_number(entry, "beta", where);
        double gamma = require_number(entry, "gamma", where);
        try {
            spec.rates[from][to] = Order::make(alpha, beta, gamma);
        } catch (const Error& e) {
            throw ValidationError(where + ": " + e.what());
        }
    }
    return spec;
}

ChainSpec parse_chain_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open chain file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_chain_json(buf.str());
}

std::string serialize_chain(const ChainSpec& spec) {
    json doc;
    doc["states"] = spec.states;
    doc["rates"] = json::array();
    const int n = spec.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j || spec.rates[i][j].is_zero()) continue;
            const Order& q = spec.rates[i][j];
            doc["rates"].push_back({{"from", i},
                                    {"to", j},
                                    {"alpha", q.alpha()},
                                    {"beta", q.beta()},
                                    {"gamma", q.gamma()}});
        }
    }
    return doc.dump(2) + "\n";
}

} // namespace metachain
