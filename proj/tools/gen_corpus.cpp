// Regenerates the bundled regression corpus under data/. Development tool;
// the JSON files it writes are committed so tests do not depend on it.
#include <fstream>
#include <iostream>
#include <string>

#include "complex.hpp"
#include "foam.hpp"
#include "io.hpp"

using namespace anchorfoam;

namespace {

void write(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        std::exit(1);
    }
    out << text;
    std::cout << "wrote " << path << "\n";
}

std::string foam_list(const std::vector<CellFoam>& foams) {
    std::string out = "[\n";
    for (size_t i = 0; i < foams.size(); ++i) {
        out += serialize_foam(foams[i]);
        if (i + 1 < foams.size()) out += ",";
        out += "\n";
    }
    out += "]\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::string root = argc > 1 ? argv[1] : "data";

    // Foams.
    {
        ThetaParams tp;
        tp.a = 1;
        tp.b = 1;
        write(root + "/foams/theta_112.json", serialize_foam(theta_foam(2, tp)));
        tp.anchored = true;
        tp.label_a = 0b01;
        tp.label_b = 0b10;
        tp.label_c = 0b11;
        write(root + "/foams/theta_anchored_12.json", serialize_foam(theta_foam(2, tp)));
    }
    {
        SphereParams sp;
        sp.thickness = 1;
        sp.decoration = SymFn::elementary(1, 1);
        write(root + "/foams/sphere_dot.json", serialize_foam(sphere_foam(2, sp)));
        SphereParams anchored;
        anchored.thickness = 1;
        anchored.labels = {{0b01, 0b01}};
        write(root + "/foams/sphere_anchored_1_1.json",
              serialize_foam(sphere_foam(2, anchored)));
    }
    {
        std::vector<CellFoam> cups;
        for (Subset s : subsets_of_size(2, 1)) {
            CupParams cp;
            cp.thickness = 1;
            cp.anchor_label = s;
            cups.push_back(cup_foam(2, cp));
        }
        write(root + "/foams/cups_essential1_n2.json", foam_list(cups));
        std::vector<CellFoam> basis;
        CupParams plain;
        plain.thickness = 1;
        basis.push_back(cup_foam(2, plain));
        CupParams dotted = plain;
        dotted.decoration = SymFn::elementary(1, 1);
        basis.push_back(cup_foam(2, dotted));
        write(root + "/foams/cups_contractible_n2.json", foam_list(basis));
    }
    {
        // probe-equal inputs over the essential 1-circle.
        CellFoam cyl = identity_foam(2, circle_web(1, true));
        CellFoam piece = neck_cut_piece(2, 1, 0b01);
        std::vector<CellFoam> probes;
        for (Subset s : subsets_of_size(2, 1)) {
            CupParams cp;
            cp.thickness = 1;
            cp.anchor_label = s;
            probes.push_back(cup_foam(2, cp));
        }
        auto pair_json = [&](const CellFoam& f, const CellFoam& g) {
            std::string out = "{\n\"f\": " + serialize_foam(f) + ",\n\"g\": " +
                              serialize_foam(g) + ",\n\"probes_in\": " + foam_list(probes) +
                              ",\n\"probes_out\": " + foam_list(probes) + "}\n";
            return out;
        };
        write(root + "/probe_pair_equal.json", pair_json(cyl, cyl));
        write(root + "/probe_pair_differ.json", pair_json(cyl, piece));
    }

    // Webs.
    write(root + "/webs/essential_loop1.json", serialize_web(circle_web(1, true)));
    write(root + "/webs/contractible_loop1.json", serialize_web(circle_web(1, false)));
    {
        AnnularWeb w;
        w.vertices.resize(2);
        w.vertices[0].name = "v0";
        w.vertices[1].name = "v1";
        w.edges.push_back({1, 0, 1, "d1"});
        w.edges.push_back({1, 0, 1, "d2"});
        w.edges.push_back({0, 1, 2, "E"});
        w.vertices[0].rot = {{0, 1}, {1, 1}, {2, 0}};
        w.vertices[1].rot = {{2, 1}, {1, 0}, {0, 0}};
        w.puncture = FaceMarker{0, false};
        w.outer = FaceMarker{0, false};
        write(root + "/webs/theta_web.json", serialize_web(w));
    }
    {
        // The annular closure of two bridged crossings, built from the diagram.
        ColoredAnnularDiagram d;
        d.points = 2;
        d.strands = {{1, true}, {1, true}};
        for (int i = 0; i < 2; ++i) {
            Slice x;
            x.kind = SliceKind::PositiveCrossing;
            x.pos = 1;
            x.colors = {1, 1};
            d.slices.push_back(x);
        }
        write(root + "/webs/torus2_bridges.json",
              serialize_web(resolution_web(d, 2, {1, 1})));
    }

    // Diagrams.
    {
        ColoredAnnularDiagram d;
        d.points = 1;
        d.strands = {{1, true}};
        write(root + "/diagrams/unknot_essential.json", serialize_diagram(d));
    }
    {
        ColoredAnnularDiagram d;
        d.points = 0;
        Slice cup{SliceKind::Cup, 1, {1}, true};
        Slice cap{SliceKind::Cap, 1, {1}, true};
        d.slices = {cup, cap};
        write(root + "/diagrams/unknot_contractible.json", serialize_diagram(d));
    }
    {
        ColoredAnnularDiagram d;
        d.points = 0;
        Slice cup{SliceKind::Cup, 1, {1}, true};
        Slice x{SliceKind::PositiveCrossing, 1, {1, 1}, true};
        Slice cap{SliceKind::Cap, 1, {1}, true};
        d.slices = {cup, x, cap};
        write(root + "/diagrams/unknot_kink_pos.json", serialize_diagram(d));
    }
    {
        ColoredAnnularDiagram d;
        d.points = 2;
        d.strands = {{1, true}, {1, true}};
        for (int i = 0; i < 2; ++i) {
            Slice x;
            x.kind = SliceKind::PositiveCrossing;
            x.pos = 1;
            x.colors = {1, 1};
            d.slices.push_back(x);
        }
        write(root + "/diagrams/torus2.json", serialize_diagram(d));
    }
    return 0;
}
