// cnet: command-line front end for the curve-network surface kernel.

#include "cnet/errors.hpp"
#include "cnet/gordon.hpp"
#include "cnet/io/document.hpp"
#include "cnet/io/mesh.hpp"
#include "cnet/profiles.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

enum Exit { Ok = 0, Failure = 1, NumericFailure = 2 };

struct MeshArgs {
    std::string out;
    int nu = 33;
    int nv = 33;
    std::string format;
};

void add_mesh_options(CLI::App* cmd, MeshArgs& m)
{
    cmd->add_option("--out", m.out, "Mesh output path")->required();
    cmd->add_option("--nu", m.nu, "Vertices along u")->check(CLI::Range(2, 100000));
    cmd->add_option("--nv", m.nv, "Vertices along v")->check(CLI::Range(2, 100000));
    cmd->add_option("--format", m.format, "stl or obj (default: from extension, else stl)")
        ->check(CLI::IsMember({"stl", "obj"}));
}

cnet::io::MeshFormat mesh_format(const MeshArgs& m)
{
    if (m.format == "obj") return cnet::io::MeshFormat::Obj;
    if (m.format.empty() && m.out.size() >= 4 && m.out.compare(m.out.size() - 4, 4, ".obj") == 0)
        return cnet::io::MeshFormat::Obj;
    return cnet::io::MeshFormat::StlAscii;
}

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
    return buf;
}

void print_grid(const cnet::IntersectionGrid& g)
{
    std::cout << "u_avg:";
    for (double u : g.u_avg) std::cout << ' ' << fmt(u);
    std::cout << "\nv_avg:";
    for (double v : g.v_avg) std::cout << ' ' << fmt(v);
    std::cout << "\nprofile guide u_tilde v_tilde x y z\n";
    for (std::size_t k = 0; k < g.points.size(); ++k)
        for (std::size_t l = 0; l < g.points[k].size(); ++l) {
            const auto& p = g.points[k][l];
            std::cout << k << ' ' << l << ' ' << fmt(g.u_tilde(k, l)) << ' ' << fmt(g.v_tilde(k, l)) << ' '
                      << fmt(p[0]) << ' ' << fmt(p[1]) << ' ' << fmt(p[2]) << '\n';
        }
}

void print_report(const cnet::GordonReport& r)
{
    std::cerr << "diagonal " << fmt(r.diagonal) << "\nprofile isocurve error " << fmt(r.profile_isocurve_error)
              << "\nguide isocurve error " << fmt(r.guide_isocurve_error) << "\nintersection error "
              << fmt(r.intersection_error) << "\noriginal curve error " << fmt(r.original_curve_error)
              << "\nreparametrization fit error " << fmt(r.max_fit_error) << "\ncontrol points (profiles, guides) "
              << r.profile_ctrl << ", " << r.guide_ctrl << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Curve-network interpolation: Gordon surfaces, skinning, CST airfoils"};
    app.require_subcommand(1);

    std::string network_path;
    MeshArgs gmesh;
    std::optional<double> approx_tol, intersect_tol;
    std::string surface_out;
    bool report = false;
    auto* gordon = app.add_subcommand("gordon", "Build a Gordon surface from a network document and export a mesh");
    gordon->add_option("network", network_path, "Network document (JSON)")->required();
    add_mesh_options(gordon, gmesh);
    gordon->add_option("--approx-tol", approx_tol, "Reparametrization tolerance, relative to the network diagonal");
    gordon->add_option("--intersect-tol", intersect_tol, "Intersection tolerance, relative to the network diagonal");
    gordon->add_option("--surface-out", surface_out, "Also write the surface as JSON");
    gordon->add_flag("--report", report, "Print error figures to stderr");

    std::string skin_path;
    MeshArgs smesh;
    std::string skin_surface_out;
    auto* skin = app.add_subcommand("skin", "Skin the profiles of a document into a surface and export a mesh");
    skin->add_option("network", skin_path, "Document whose profiles are skinned")->required();
    add_mesh_options(skin, smesh);
    skin->add_option("--surface-out", skin_surface_out, "Also write the surface as JSON");

    std::vector<double> cst;
    std::string csv_out;
    int samples = 101;
    auto* airfoil = app.add_subcommand("airfoil", "Sample one CST curve to CSV (psi,zeta)");
    airfoil->add_option("--cst", cst, "n1,n2,zeta_te,A0,A1,...")->required()->delimiter(',');
    airfoil->add_option("--out", csv_out, "CSV path (default: stdout)");
    airfoil->add_option("--samples", samples, "Uniform psi samples")->check(CLI::Range(2, 10000000));

    std::string eval_path;
    double eval_u = 0, eval_v = 0;
    auto* eval = app.add_subcommand("eval", "Evaluate a surface document at (u, v)");
    eval->add_option("surface", eval_path, "Surface document (JSON)")->required();
    eval->add_option("--u", eval_u, "u parameter")->required();
    eval->add_option("--v", eval_v, "v parameter")->required();

    std::string check_path;
    auto* check = app.add_subcommand("check", "Validate a network document and print its intersection grid");
    check->add_option("network", check_path, "Network document (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return Failure;
    }

    try {
        if (*gordon) {
            const auto doc = cnet::io::read_network_file(network_path);
            auto config = doc.config.apply();
            if (approx_tol) config.approx_tol = *approx_tol;
            if (intersect_tol) config.intersection_tol = *intersect_tol;
            const auto result = cnet::build_gordon(cnet::io::realize(doc), config);
            if (report) print_report(result.report);
            if (!surface_out.empty()) cnet::io::write_text_file(surface_out, cnet::io::serialize_surface(result.surface));
            cnet::io::write_mesh_file(cnet::io::tessellate(result.surface, gmesh.nu, gmesh.nv), mesh_format(gmesh),
                                      gmesh.out);
        } else if (*skin) {
            const auto doc = cnet::io::read_network_file(skin_path);
            const auto surface = cnet::loft(cnet::io::realize(doc).profiles);
            if (!skin_surface_out.empty())
                cnet::io::write_text_file(skin_surface_out, cnet::io::serialize_surface(surface));
            cnet::io::write_mesh_file(cnet::io::tessellate(surface, smesh.nu, smesh.nv), mesh_format(smesh), smesh.out);
        } else if (*airfoil) {
            if (cst.size() < 4) throw cnet::InvalidArgument("--cst needs n1,n2,zeta_te and at least one coefficient");
            cnet::CstParameters p;
            p.n1 = cst[0];
            p.n2 = cst[1];
            p.zeta_te = cst[2];
            p.coefficients.assign(cst.begin() + 3, cst.end());
            std::ostringstream out;
            out << "psi,zeta\n";
            for (int i = 0; i < samples; ++i) {
                const double psi = (i == samples - 1) ? 1.0 : double(i) / (samples - 1);
                char buf[96];
                std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", psi, cnet::cst_evaluate(p, psi));
                out << buf;
            }
            if (csv_out.empty()) std::cout << out.str();
            else cnet::io::write_text_file(csv_out, out.str());
        } else if (*eval) {
            const auto s = cnet::io::read_surface_file(eval_path);
            const auto p = s.evaluate(eval_u, eval_v);
            std::cout << fmt(p[0]) << ' ' << fmt(p[1]) << ' ' << fmt(p[2]) << '\n';
        } else if (*check) {
            const auto doc = cnet::io::read_network_file(check_path);
            const auto network = cnet::io::realize(doc);
            const double diag = cnet::network_diagonal(network);
            if (!(diag > 0)) throw cnet::NetworkError("curve network has zero extent");
            const auto grid = cnet::compute_intersections(cnet::normalized(network),
                                                          doc.config.apply().intersection_tol * diag);
            print_grid(grid);
        }
    } catch (const cnet::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_numeric() ? NumericFailure : Failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Failure;
    }
    return Ok;
}
