#include "glps/problem.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

namespace glps
{
    namespace
    {
        struct ExactPair
        {
            ScalarField u;
            VectorField grad;
        };

        // 100 x^2 (1-x)^2 y (1-y) (1-2y)
        ExactPair smooth_polynomial()
        {
            const auto X = [](double x) { return x * x * (1 - x) * (1 - x); };
            const auto dX = [](double x) { return 2 * x * (1 - x) * (1 - 2 * x); };
            const auto Y = [](double y) { return y * (1 - y) * (1 - 2 * y); };
            const auto dY = [](double y) { return 1 - 6 * y + 6 * y * y; };
            return {[=](const Point &p) { return 100 * X(p.x()) * Y(p.y()); },
                    [=](const Point &p) { return Point(100 * dX(p.x()) * Y(p.y()), 100 * X(p.x()) * dY(p.y())); }};
        }

        // (tanh((y - 0.5) / 0.04) + 1) / 2
        ExactPair tanh_layer()
        {
            constexpr double width = 0.04;
            return {[](const Point &p) { return 0.5 * (std::tanh((p.y() - 0.5) / width) + 1); },
                    [](const Point &p) {
                        const double t = std::tanh((p.y() - 0.5) / width);
                        return Point(0.0, 0.5 / width * (1 - t * t));
                    }};
        }

        // 16 x(1-x) y(1-y) (1/2 + atan(200 (1/16 - (x-1/2)^2 - (y-1/2)^2)) / pi)
        ExactPair circular_layer()
        {
            constexpr double sharpness = 200.0;
            constexpr double pi = std::numbers::pi;
            const auto radial = [](const Point &p) {
                return 0.0625 - (p.x() - 0.5) * (p.x() - 0.5) - (p.y() - 0.5) * (p.y() - 0.5);
            };
            return {[=](const Point &p) {
                        const double bump = 16 * p.x() * (1 - p.x()) * p.y() * (1 - p.y());
                        return bump * (0.5 + std::atan(sharpness * radial(p)) / pi);
                    },
                    [=](const Point &p) {
                        const double x = p.x(), y = p.y();
                        const double bump = 16 * x * (1 - x) * y * (1 - y);
                        const Point dBump(16 * (1 - 2 * x) * y * (1 - y), 16 * x * (1 - x) * (1 - 2 * y));
                        const double s = sharpness * radial(p);
                        const double layer = 0.5 + std::atan(s) / pi;
                        const Point dLayer = sharpness / (pi * (1 + s * s)) * Point(-2 * (x - 0.5), -2 * (y - 0.5));
                        return Point(layer * dBump + bump * dLayer);
                    }};
        }

        ExactPair affine()
        {
            return {[](const Point &p) { return 1.0 + 2.0 * p.x() + 3.0 * p.y(); },
                    [](const Point &) { return Point(2.0, 3.0); }};
        }

        ExactPair preset_pair(SolutionPreset preset)
        {
            switch(preset)
            {
            case SolutionPreset::SmoothPolynomial:
                return smooth_polynomial();
            case SolutionPreset::TanhLayer:
                return tanh_layer();
            case SolutionPreset::CircularLayer:
                return circular_layer();
            case SolutionPreset::Affine:
                return affine();
            }
            throw Error("unknown solution preset");
        }

        ProblemSpec constant_coefficients(const std::string &name, const Rectangle &domain, const Point &b, double mu)
        {
            ProblemSpec spec;
            spec.name = name;
            spec.domain = domain;
            spec.velocity = [b](const Point &) { return b; };
            spec.velocityGradient = [](const Point &) { return Eigen::Matrix2d::Zero().eval(); };
            spec.divergence = [](const Point &) { return 0.0; };
            spec.reaction = [mu](const Point &) { return mu; };
            spec.alpha = mu;
            return spec;
        }

        void attach_exact(ProblemSpec &spec, const ExactPair &exact, const Point &b, double mu)
        {
            spec.exactSolution = exact.u;
            spec.exactGradient = exact.grad;
            spec.source = [u = exact.u, grad = exact.grad, b, mu](const Point &p) {
                return mu * u(p) + b.dot(grad(p));
            };
        }
    }

    ProblemSpec example(int id)
    {
        const Rectangle unit{0.0, 1.0, 0.0, 1.0};
        switch(id)
        {
        case 1:
        {
            const Point b(3.0, 2.0);
            auto spec = constant_coefficients("smooth solution", unit, b, 2.0);
            attach_exact(spec, smooth_polynomial(), b, 2.0);
            spec.inflow = [](const Point &) { return 0.0; };
            spec.betaConforming = 0.1;
            spec.betaNonconforming = 0.1;
            return spec;
        }
        case 2:
        {
            const Point b(0.0, 1.0);
            auto spec = constant_coefficients("advection problem", unit, b, 1.0);
            attach_exact(spec, tanh_layer(), b, 1.0);
            spec.inflow = [](const Point &) { return 0.0; };
            spec.betaConforming = 0.1;
            spec.betaNonconforming = 0.2;
            return spec;
        }
        case 3:
        {
            const Point b(2.0, 3.0);
            auto spec = constant_coefficients("circular internal layer", unit, b, 2.0);
            const auto exact = circular_layer();
            attach_exact(spec, exact, b, 2.0);
            spec.inflow = exact.u;
            spec.betaConforming = 0.06;
            spec.betaNonconforming = 0.05;
            return spec;
        }
        case 4:
        {
            const Point b(1.0, 0.0);
            auto spec = constant_coefficients("non-smooth solution", Rectangle{-1.0, 1.0, -1.0, 1.0}, b, 0.0);
            const ScalarField step = [](const Point &p) { return p.y() > 0.0 ? 1.0 : 0.0; };
            spec.source = [](const Point &) { return 0.0; };
            spec.inflow = step;
            spec.exactSolution = step;
            spec.exactGradient = [](const Point &) { return Point(0.0, 0.0); };
            spec.alpha = 0.0;
            spec.betaConforming = 0.7;
            spec.betaNonconforming = 0.7;
            return spec;
        }
        default:
            throw Error("example: id must be in 1..4");
        }
    }

    SolutionPreset parse_solution_preset(const std::string &name)
    {
        if(name == "smooth_polynomial")
            return SolutionPreset::SmoothPolynomial;
        if(name == "tanh_layer")
            return SolutionPreset::TanhLayer;
        if(name == "circular_layer")
            return SolutionPreset::CircularLayer;
        if(name == "affine")
            return SolutionPreset::Affine;
        throw Error("unknown solution preset '" + name + "'");
    }

    ProblemSpec manufactured_problem(const Rectangle &domain, const Point &b, double mu,
                                     SolutionPreset preset, double beta)
    {
        if(!(domain.width() > 0.0) || !(domain.height() > 0.0))
            throw Error("manufactured_problem: empty domain");
        if(!(beta > 0.0))
            throw Error("manufactured_problem: beta must be positive");
        auto spec = constant_coefficients("custom", domain, b, mu);
        const auto exact = preset_pair(preset);
        attach_exact(spec, exact, b, mu);
        spec.inflow = exact.u;
        spec.betaConforming = beta;
        spec.betaNonconforming = beta;
        return spec;
    }

    ProblemSpec load_problem_config(const std::string &path)
    {
        std::ifstream in(path);
        if(!in)
            throw Error("cannot open problem config '" + path + "'");
        nlohmann::json j;
        try
        {
            in >> j;
            const auto d = j.at("domain").get<std::vector<double>>();
            const auto b = j.at("b").get<std::vector<double>>();
            if(d.size() != 4 || b.size() != 2)
                throw Error("problem config: 'domain' needs 4 numbers and 'b' needs 2");
            auto spec = manufactured_problem(Rectangle{d[0], d[1], d[2], d[3]}, Point(b[0], b[1]),
                                             j.at("mu").get<double>(),
                                             parse_solution_preset(j.at("solution").get<std::string>()),
                                             j.value("beta", 0.1));
            spec.name = j.value("name", std::string("custom"));
            return spec;
        }
        catch(const nlohmann::json::exception &e)
        {
            throw Error("problem config '" + path + "': " + e.what());
        }
    }

    CoercivityCheck check_coercivity(const ProblemSpec &spec, const Mesh &mesh, const TriangleRule<double> &rule)
    {
        double minimum = std::numeric_limits<double>::infinity();
        for(Index k = 0; k < mesh.numCells(); ++k)
            for(const auto &bary : rule.points)
            {
                const Point x = map_to_cell(mesh, k, bary);
                minimum = std::min(minimum, spec.reaction(x) - 0.5 * spec.divergence(x));
            }
        return {minimum, minimum > 0.0 && minimum >= spec.alpha - 1e-12};
    }
}
