#include "hawkes/io.hpp"

#include "hawkes/error.hpp"

#include <fstream>
#include <sstream>

namespace hawkes::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
    throw HawkesError(ErrorCode::parse_error, message);
}

double number_field(const json& obj, const std::string& key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        fail(where + ": missing field '" + key + "'");
    }
    if (!it->is_number()) {
        fail(where + ": field '" + key + "' must be a number");
    }
    return it->get<double>();
}

EventSequence sequence_from_json(const json& doc, const std::string& where) {
    if (!doc.is_object()) {
        fail(where + ": expected an object with fields 'T' and 'events'");
    }
    const double horizon = number_field(doc, "T", where);
    const auto it = doc.find("events");
    if (it == doc.end() || !it->is_array()) {
        fail(where + ": field 'events' must be an array");
    }
    std::vector<double> times;
    times.reserve(it->size());
    for (const auto& v : *it) {
        if (!v.is_number()) {
            fail(where + ": field 'events' must contain only numbers");
        }
        times.push_back(v.get<double>());
    }
    try {
        return EventSequence(std::move(times), horizon);
    } catch (const HawkesError& e) {
        fail(where + ": " + e.what());
    }
}

} // namespace

std::vector<EventSequence> parse_sequences(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        fail("sequence file is empty");
    }
    std::vector<EventSequence> out;
    if (text[first] == '[') {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            fail(std::string("sequence file: ") + e.what());
        }
        for (std::size_t i = 0; i < doc.size(); ++i) {
            out.push_back(sequence_from_json(doc[i], "sequence " + std::to_string(i)));
        }
        return out;
    }
    // One object, or one object per line.
    try {
        out.push_back(sequence_from_json(json::parse(text), "sequence 0"));
        return out;
    } catch (const json::parse_error&) {
    }
    std::istringstream lines{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::parse_error& e) {
            fail("line " + std::to_string(lineno) + ": " + e.what());
        }
        out.push_back(sequence_from_json(doc, "line " + std::to_string(lineno)));
    }
    return out;
}

nlohmann::json sequence_to_json(const EventSequence& seq) {
    return json{{"T", seq.horizon()}, {"events", std::vector<double>(seq.times().begin(), seq.times().end())}};
}

std::string dump_sequences(std::span<const EventSequence> sequences) {
    json doc = json::array();
    for (const auto& seq : sequences) {
        doc.push_back(sequence_to_json(seq));
    }
    return doc.dump() + "\n";
}

HawkesModel model_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        fail("model: expected an object with fields 'mu', 'family' and 'params'");
    }
    const double mu = number_field(doc, "mu", "model");
    const auto fam = doc.find("family");
    if (fam == doc.end() || !fam->is_string()) {
        fail("model: field 'family' must be a string");
    }
    const Family family = parse_family(fam->get<std::string>());
    const auto params = doc.find("params");
    if (params == doc.end() || !params->is_object()) {
        fail("model: field 'params' must be an object");
    }
    std::vector<double> values;
    for (auto name : parameter_names(family)) {
        values.push_back(number_field(*params, std::string(name), "model.params"));
    }
    if (params->size() != values.size()) {
        fail("model.params: unexpected parameter for family " + std::string(to_string(family)));
    }
    HawkesModel model{mu, make_kernel(family, values)};
    try {
        validate(model);
    } catch (const HawkesError& e) {
        fail(std::string("model: ") + e.what());
    }
    return model;
}

nlohmann::json model_to_json(const HawkesModel& model) {
    const Family family = family_of(model.kernel);
    json params = json::object();
    const auto values = parameters(model.kernel);
    const auto names = parameter_names(family);
    for (std::size_t i = 0; i < values.size(); ++i) {
        params[std::string(names[i])] = values[i];
    }
    return json{{"mu", model.mu}, {"family", std::string(to_string(family))}, {"params", params}};
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw HawkesError(ErrorCode::parse_error, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw HawkesError(ErrorCode::invalid_argument, "cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw HawkesError(ErrorCode::invalid_argument, "write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

} // namespace hawkes::io
