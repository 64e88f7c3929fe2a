#include "qbn/io.hpp"

#include "qbn/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace qbn {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text;
    if (!out) throw ParseError("write to '" + path + "' failed");
}

} // namespace

Network load_network(const std::string& path) {
    ordered_json doc = parse_file(path);
    Network net;
    try {
        if (!doc.contains("nodes") || !doc.contains("cpts"))
            throw ParseError(path + ": expected top-level \"nodes\" and \"cpts\"");
        for (const auto& node : doc.at("nodes")) {
            Variable v;
            v.name = node.at("name").get<std::string>();
            v.states = node.at("states").get<std::vector<std::string>>();
            auto parents = node.at("parents").get<std::vector<std::string>>();
            net.add_variable(std::move(v), parents);
        }
        const auto& cpts = doc.at("cpts");
        for (int i = 0; i < net.variable_count(); ++i) {
            const std::string& name = net.variable(i).name;
            if (!cpts.contains(name))
                throw ParseError(path + ": missing CPT for variable '" + name + "'");
            auto rows = cpts.at(name).get<std::vector<std::vector<double>>>();
            if (static_cast<int>(rows.size()) != net.config_count(i))
                throw Error("CPT of '" + name + "' has " + std::to_string(rows.size()) +
                            " rows, expected " + std::to_string(net.config_count(i)));
            Cpt cpt(net.config_count(i), net.variable(i).state_count());
            for (int k = 0; k < net.config_count(i); ++k) {
                if (static_cast<int>(rows[k].size()) != net.variable(i).state_count())
                    throw Error("CPT of '" + name + "' row " + std::to_string(k) +
                                " has wrong length");
                // absorb text round-off, reject real defects
                double sum = 0.0;
                for (double p : rows[k]) sum += p;
                if (std::abs(sum - 1.0) <= kRowSumTolerance && sum > 0.0)
                    for (double& p : rows[k]) p /= sum;
                cpt.set_row(k, rows[k]);
            }
            net.set_cpt(i, std::move(cpt));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }

    auto defects = validate(net);
    if (!defects.empty()) {
        std::ostringstream os;
        os << path << ": invalid network:";
        for (const auto& d : defects) os << "\n  " << d.message;
        throw Error(os.str());
    }
    return net;
}

void save_network(const Network& net, const std::string& path) {
    ordered_json doc;
    doc["nodes"] = ordered_json::array();
    for (int i = 0; i < net.variable_count(); ++i) {
        ordered_json node;
        node["name"] = net.variable(i).name;
        node["states"] = net.variable(i).states;
        std::vector<std::string> parents;
        for (int p : net.parents(i)) parents.push_back(net.variable(p).name);
        node["parents"] = parents;
        doc["nodes"].push_back(std::move(node));
    }
    doc["cpts"] = ordered_json::object();
    for (int i = 0; i < net.variable_count(); ++i) {
        ordered_json rows = ordered_json::array();
        const Cpt& cpt = net.cpt(i);
        for (int k = 0; k < cpt.config_count(); ++k) {
            ordered_json row = ordered_json::array();
            for (int j = 0; j < cpt.state_count(); ++j) row.push_back(cpt.at(k, j));
            rows.push_back(std::move(row));
        }
        doc["cpts"][net.variable(i).name] = std::move(rows);
    }
    write_file(path, doc.dump(2) + "\n");
}

ConstraintSet load_constraints(const std::string& path, const Network& net) {
    ordered_json doc = parse_file(path);
    ConstraintSet cs;
    try {
        for (const auto& rec : doc.at("influences")) {
            QualitativeInfluence inf;
            inf.parent = rec.at("parent").get<std::string>();
            inf.child = rec.at("child").get<std::string>();
            auto sign = rec.at("sign").get<std::string>();
            if (sign == "+")
                inf.sign = Sign::positive;
            else if (sign == "-")
                inf.sign = Sign::negative;
            else
                throw ParseError(path + ": sign must be \"+\" or \"-\", got \"" + sign + "\"");
            cs.influences.push_back(std::move(inf));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }

    auto defects = validate(net, cs);
    if (!defects.empty()) {
        std::ostringstream os;
        os << path << ": invalid constraint set:";
        for (const auto& d : defects) os << "\n  " << d.message;
        throw Error(os.str());
    }
    return cs;
}

void save_constraints(const ConstraintSet& cs, const std::string& path) {
    ordered_json doc;
    doc["influences"] = ordered_json::array();
    for (const auto& inf : cs.influences) {
        ordered_json rec;
        rec["parent"] = inf.parent;
        rec["child"] = inf.child;
        rec["sign"] = std::string(1, sign_char(inf.sign));
        doc["influences"].push_back(std::move(rec));
    }
    write_file(path, doc.dump(2) + "\n");
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

} // namespace

Dataset load_dataset(const std::string& path, const Network& net) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    Dataset data;
    std::vector<int> seen(net.variable_count(), 0);
    for (const std::string& name : split_line(line)) {
        int i = net.index_of(name);
        if (i < 0) throw ParseError(path + ": unknown column '" + name + "'");
        if (seen[i]++) throw ParseError(path + ": duplicate column '" + name + "'");
        data.columns.push_back(i);
    }

    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_line(line);
        if (fields.size() != data.columns.size()) {
            std::ostringstream os;
            os << path << ":" << line_no << ": expected " << data.columns.size()
               << " fields, got " << fields.size();
            throw ParseError(os.str());
        }
        Case c{std::vector<int>(net.variable_count(), -1)};
        for (size_t f = 0; f < fields.size(); ++f) {
            if (fields[f] == "?") continue;
            int i = data.columns[f];
            int j = net.variable(i).state_index(fields[f]);
            if (j < 0) {
                std::ostringstream os;
                os << path << ":" << line_no << ": unknown state '" << fields[f]
                   << "' for variable '" << net.variable(i).name << "'";
                throw ParseError(os.str());
            }
            c.state[i] = j;
        }
        data.cases.push_back(std::move(c));
    }
    return data;
}

void save_dataset(const Dataset& data, const Network& net, const std::string& path) {
    std::ostringstream out;
    for (size_t f = 0; f < data.columns.size(); ++f) {
        if (f) out << ',';
        out << net.variable(data.columns[f]).name;
    }
    out << '\n';
    for (const Case& c : data.cases) {
        for (size_t f = 0; f < data.columns.size(); ++f) {
            if (f) out << ',';
            int i = data.columns[f];
            int j = c.state[i];
            out << (j < 0 ? "?" : net.variable(i).states[j]);
        }
        out << '\n';
    }
    write_file(path, out.str());
}

} // namespace qbn
