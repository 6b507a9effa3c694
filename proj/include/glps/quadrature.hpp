#ifndef GLPS_QUADRATURE_HPP
#define GLPS_QUADRATURE_HPP

#include "glps/mesh.hpp"

#include <Eigen/Core>

#include <vector>

namespace glps
{
    /// Symmetric Gauss-type rule on the reference triangle {x, y >= 0, x + y <= 1}.
    /// Points are stored in barycentric coordinates (l0, l1, l2) with respect to
    /// the vertices (0,0), (1,0), (0,1); weights sum to the reference area 1/2.
    template<typename Scalar>
    struct TriangleRule
    {
        using Barycentric = Eigen::Matrix<Scalar, 3, 1>;

        std::vector<Barycentric> points;
        std::vector<Scalar> weights;
        int degree = 0;

        std::size_t size() const { return weights.size(); }
    };

    /// Gauss-Legendre rule on [0, 1]; weights sum to 1.
    template<typename Scalar>
    struct EdgeRule
    {
        std::vector<Scalar> points;
        std::vector<Scalar> weights;
        int degree = 0;

        std::size_t size() const { return weights.size(); }
    };

    namespace detail
    {
        template<typename Scalar>
        void add_centroid(TriangleRule<Scalar> &rule, long double w)
        {
            const Scalar third = Scalar(1) / Scalar(3);
            rule.points.emplace_back(third, third, third);
            rule.weights.push_back(static_cast<Scalar>(w / 2));
        }

        // Orbit of (a, a, 1 - 2a).
        template<typename Scalar>
        void add_orbit3(TriangleRule<Scalar> &rule, long double a, long double w)
        {
            const Scalar s = static_cast<Scalar>(a);
            const Scalar c = static_cast<Scalar>(1.0L - 2.0L * a);
            const Scalar ws = static_cast<Scalar>(w / 2);
            rule.points.emplace_back(c, s, s);
            rule.points.emplace_back(s, c, s);
            rule.points.emplace_back(s, s, c);
            rule.weights.insert(rule.weights.end(), 3, ws);
        }

        // Orbit of (a, b, 1 - a - b).
        template<typename Scalar>
        void add_orbit6(TriangleRule<Scalar> &rule, long double a, long double b, long double w)
        {
            const Scalar p = static_cast<Scalar>(a);
            const Scalar q = static_cast<Scalar>(b);
            const Scalar r = static_cast<Scalar>(1.0L - a - b);
            const Scalar ws = static_cast<Scalar>(w / 2);
            rule.points.emplace_back(p, q, r);
            rule.points.emplace_back(p, r, q);
            rule.points.emplace_back(q, p, r);
            rule.points.emplace_back(q, r, p);
            rule.points.emplace_back(r, p, q);
            rule.points.emplace_back(r, q, p);
            rule.weights.insert(rule.weights.end(), 6, ws);
        }
    }

    /// Rule exact for total degree <= degree, degree in 1..8. All weights are
    /// positive, so degrees 3 and 7 are served by the degree 4 and 8 rules
    /// (the returned rule reports its actual exactness degree).
    template<typename Scalar = double>
    TriangleRule<Scalar> triangle_rule(int degree)
    {
        TriangleRule<Scalar> rule;
        switch(degree)
        {
        case 1:
            rule.degree = 1;
            detail::add_centroid(rule, 1.0L);
            break;
        case 2:
            rule.degree = 2;
            detail::add_orbit3(rule, 1.0L / 6.0L, 1.0L / 3.0L);
            break;
        case 3:
        case 4:
            rule.degree = 4;
            detail::add_orbit3(rule, 0.44594849091596488631832925388305L, 0.22338158967801146569500700843312L);
            detail::add_orbit3(rule, 0.09157621350977074345957146340220L, 0.10995174365532186763832632490021L);
            break;
        case 5:
            rule.degree = 5;
            detail::add_centroid(rule, 0.225L);
            detail::add_orbit3(rule, 0.47014206410511508977044120951345L, 0.13239415278850618073764938783315L);
            detail::add_orbit3(rule, 0.10128650732345633880098736191512L, 0.12593918054482715259568394550018L);
            break;
        case 6:
            rule.degree = 6;
            detail::add_orbit3(rule, 0.24928674517091042129163855310702L, 0.11678627572637936602528961138558L);
            detail::add_orbit3(rule, 0.06308901449150222834033160287082L, 0.05084490637020681692093680910686L);
            detail::add_orbit6(rule, 0.31035245103378440541660773395655L, 0.63650249912139864723014259441205L,
                               0.08285107561837357519355345642044L);
            break;
        case 7:
        case 8:
            rule.degree = 8;
            detail::add_centroid(rule, 0.14431560767778716825109111048906L);
            detail::add_orbit3(rule, 0.17056930775176020662229350149146L, 0.10321737053471825028179155029212L);
            detail::add_orbit3(rule, 0.05054722831703097545842355059660L, 0.03245849762319808031092592834178L);
            detail::add_orbit3(rule, 0.45929258829272315602881551449417L, 0.09509163426728462479389610438858L);
            detail::add_orbit6(rule, 0.26311282963463811342178578628464L, 0.72849239295540428124100037917606L,
                               0.02723031417443499426484469007390L);
            break;
        default:
            throw Error("triangle_rule: degree must be in 1..8");
        }
        return rule;
    }

    /// Gauss-Legendre rule with ceil((degree + 1) / 2) points, degree in 1..9.
    template<typename Scalar = double>
    EdgeRule<Scalar> edge_rule(int degree)
    {
        if(degree < 1 || degree > 9)
            throw Error("edge_rule: degree must be in 1..9");

        // Nodes and weights on [-1, 1], nonnegative half only.
        static const long double nodes[5][3] = {
            {0.0L, 0.0L, 0.0L},
            {0.57735026918962576450914878050196L, 0.0L, 0.0L},
            {0.0L, 0.77459666924148337703585307995648L, 0.0L},
            {0.33998104358485626480266575910324L, 0.86113631159405257522394648889281L, 0.0L},
            {0.0L, 0.53846931010568309103631442070021L, 0.90617984593866399279762687829939L}};
        static const long double weights[5][3] = {
            {2.0L, 0.0L, 0.0L},
            {1.0L, 0.0L, 0.0L},
            {0.88888888888888888888888888888889L, 0.55555555555555555555555555555556L, 0.0L},
            {0.65214515486254614262693605077800L, 0.34785484513745385737306394922200L, 0.0L},
            {0.56888888888888888888888888888889L, 0.47862867049936646804129151483564L,
             0.23692688505618908751426404071992L}};

        const int npts = (degree + 2) / 2;
        EdgeRule<Scalar> rule;
        rule.degree = 2 * npts - 1;
        const auto add = [&rule](long double x, long double w) {
            rule.points.push_back(static_cast<Scalar>((1.0L + x) / 2.0L));
            rule.weights.push_back(static_cast<Scalar>(w / 2.0L));
        };
        const int row = npts - 1;
        const bool odd = npts % 2 == 1;
        const int pairs = npts / 2;
        for(int k = pairs; k >= 1; --k)
        {
            const int col = odd ? k : k - 1;
            add(-nodes[row][col], weights[row][col]);
        }
        if(odd)
            add(0.0L, weights[row][0]);
        for(int k = 1; k <= pairs; ++k)
        {
            const int col = odd ? k : k - 1;
            add(nodes[row][col], weights[row][col]);
        }
        return rule;
    }

    /// Physical point of barycentric coordinates on a mesh cell.
    template<typename Derived>
    Point map_to_cell(const Mesh &mesh, Index cell, const Eigen::MatrixBase<Derived> &bary)
    {
        return bary(0) * mesh.vertex(cell, 0) + bary(1) * mesh.vertex(cell, 1) + bary(2) * mesh.vertex(cell, 2);
    }

    /// Physical point at parameter t in [0, 1] along an edge, from vertices[0] to vertices[1].
    inline Point map_to_edge(const Mesh &mesh, Index edge, double t)
    {
        const auto &e = mesh.edges[edge];
        return (1.0 - t) * mesh.vertices[e.vertices[0]] + t * mesh.vertices[e.vertices[1]];
    }

    /// Integral of f over a cell with the affine map from the reference triangle.
    template<typename F>
    double integrate_cell(const Mesh &mesh, Index cell, F &&f, const TriangleRule<double> &rule)
    {
        const double jac = 2.0 * mesh.cellAreas[cell];
        double sum = 0.0;
        for(std::size_t q = 0; q < rule.size(); ++q)
            sum += rule.weights[q] * f(map_to_cell(mesh, cell, rule.points[q]));
        return jac * sum;
    }

    /// Integral of f over an edge.
    template<typename F>
    double integrate_edge(const Mesh &mesh, Index edge, F &&f, const EdgeRule<double> &rule)
    {
        double sum = 0.0;
        for(std::size_t q = 0; q < rule.size(); ++q)
            sum += rule.weights[q] * f(map_to_edge(mesh, edge, rule.points[q]));
        return mesh.edges[edge].length * sum;
    }
}

#endif
