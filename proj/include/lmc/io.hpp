#pragma once

// The ".2c" face-list text format.
//
//   # comment
//   v <count>        optional; declares vertices 0..count-1
//   e a b            bare edge
//   f a b c          face
//
// Serialization is canonical: an optional comment block, then "v" when the vertex set is
// exactly 0..count-1, then bare edges, then faces, each in sorted order.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "complex.hpp"

namespace lmc {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline TwoComplex read_2c(std::istream& in)
{
    std::vector<Face> faces;
    std::vector<Edge> edges;
    std::vector<Vertex> verts;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& why) {
        throw FormatError("line " + std::to_string(lineno) + ": " + why + ": '" + line + "'");
    };
    auto label = [&](std::istringstream& ls) {
        long long x = -1;
        if (!(ls >> x) || x < 0 || x > static_cast<long long>(UINT32_MAX))
            fail("expected a non-negative vertex label");
        return static_cast<Vertex>(x);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream ls(line.substr(first));
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            Vertex n = label(ls);
            for (Vertex i = 0; i < n; ++i)
                verts.push_back(i);
        } else if (tag == "e") {
            Vertex a = label(ls), b = label(ls);
            if (a == b)
                fail("degenerate edge");
            edges.push_back(Edge::of(a, b));
        } else if (tag == "f") {
            Vertex a = label(ls), b = label(ls), c = label(ls);
            if (a == b || b == c || a == c)
                fail("degenerate face");
            faces.push_back(Face::of(a, b, c));
        } else {
            fail("unknown record '" + tag + "'");
        }
        std::string extra;
        if (ls >> extra)
            fail("trailing token '" + extra + "'");
    }
    return TwoComplex::build(faces, edges, verts);
}

inline TwoComplex read_2c_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open '" + path + "'");
    return read_2c(in);
}

inline void write_2c(std::ostream& out, const TwoComplex& x, const std::vector<std::string>& comments = {})
{
    for (const auto& c : comments)
        out << "# " << c << '\n';
    const auto& vs = x.vertices();
    bool prefix = !vs.empty() && vs.back() + 1 == vs.size();
    if (prefix) {
        out << "v " << vs.size() << '\n';
    } else {
        std::vector<char> used(vs.size(), 0);
        for (const Edge& e : x.edges()) {
            used[x.vertex_index(e.a)] = 1;
            used[x.vertex_index(e.b)] = 1;
        }
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (!used[i])
                throw FormatError("isolated vertex " + std::to_string(vs[i]) +
                                  " is only representable when the vertex set is 0..v-1");
    }
    std::vector<char> in_face(x.num_edges(), 0);
    for (const Face& f : x.faces())
        for (const Edge& e : f.edges())
            in_face[x.edge_index(e)] = 1;
    for (std::size_t i = 0; i < x.num_edges(); ++i)
        if (!in_face[i])
            out << "e " << x.edges()[i].a << ' ' << x.edges()[i].b << '\n';
    for (const Face& f : x.faces())
        out << "f " << f.a << ' ' << f.b << ' ' << f.c << '\n';
}

inline std::string to_2c(const TwoComplex& x, const std::vector<std::string>& comments = {})
{
    std::ostringstream os;
    write_2c(os, x, comments);
    return os.str();
}

inline TwoComplex from_2c(const std::string& text)
{
    std::istringstream is(text);
    return read_2c(is);
}

} // namespace lmc
