#include <dhull/shape_io.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dhull {

namespace {

using nlohmann::json;

Rational rational_field(const json& value, const char* name) {
    try {
        if (value.is_string())
            return parse_rational(value.get<std::string>());
        if (value.is_number_integer())
            return Rational(value.get<std::int64_t>());
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("bad rational in '") + name +
                                    "': " + e.what());
    }
    throw std::invalid_argument(
        std::string("field '") + name +
        "' must be an integer or a rational/decimal string");
}

} // namespace

std::shared_ptr<BodyOracle> parse_shape_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("bad shape JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
        throw std::invalid_argument("shape JSON needs a string 'type' field");

    const std::string type = doc["type"].get<std::string>();
    if (type == "disk") {
        for (const char* key : {"cx", "cy", "r"}) {
            if (!doc.contains(key))
                throw std::invalid_argument(
                    std::string("disk shape needs field '") + key + "'");
        }
        const Rational r = rational_field(doc["r"], "r");
        try {
            return std::make_shared<DiskBody>(DiskBody::from_radius(
                rational_field(doc["cx"], "cx"), rational_field(doc["cy"], "cy"),
                r));
        } catch (const std::exception& e) {
            throw std::invalid_argument(std::string("bad disk: ") + e.what());
        }
    }
    if (type == "polygon") {
        if (!doc.contains("vertices") || !doc["vertices"].is_array())
            throw std::invalid_argument(
                "polygon shape needs a 'vertices' array");
        std::vector<RationalPoint> verts;
        for (const auto& entry : doc["vertices"]) {
            if (!entry.is_array() || entry.size() != 2)
                throw std::invalid_argument(
                    "each polygon vertex must be a [x, y] pair");
            verts.push_back(RationalPoint{rational_field(entry[0], "vertex x"),
                                          rational_field(entry[1], "vertex y")});
        }
        try {
            return std::make_shared<PolygonBody>(std::move(verts));
        } catch (const std::exception& e) {
            throw std::invalid_argument(std::string("bad polygon: ") +
                                        e.what());
        }
    }
    throw std::invalid_argument("unknown shape type '" + type + "'");
}

std::shared_ptr<BodyOracle> load_shape(const std::string& file_or_inline) {
    const auto first = file_or_inline.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && file_or_inline[first] == '{')
        return parse_shape_json(file_or_inline);

    std::ifstream in(file_or_inline);
    if (!in)
        throw std::invalid_argument("cannot open shape file '" +
                                    file_or_inline + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_shape_json(buffer.str());
}

} // namespace dhull
