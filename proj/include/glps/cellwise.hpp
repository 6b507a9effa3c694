#ifndef GLPS_CELLWISE_HPP
#define GLPS_CELLWISE_HPP

#include "glps/space.hpp"

#include <functional>

namespace glps
{
    /// Piecewise function given by its restriction to each cell, so traces on
    /// both sides of an edge and broken gradients are well defined.
    struct CellwiseFunction
    {
        std::function<double(Index, const Point &)> value;
        std::function<Point(Index, const Point &)> gradient;
    };

    inline CellwiseFunction from_exact(std::function<double(const Point &)> u, std::function<Point(const Point &)> grad)
    {
        return {[u = std::move(u)](Index, const Point &x) { return u(x); },
                [g = std::move(grad)](Index, const Point &x) { return g(x); }};
    }

    /// View of a discrete function; u must outlive the result.
    inline CellwiseFunction from_fe(const FEFunction &u)
    {
        return {[&u](Index k, const Point &x) { return u.value(k, x); },
                [&u](Index k, const Point &) { return u.gradient(k); }};
    }

    inline CellwiseFunction difference(CellwiseFunction a, CellwiseFunction b)
    {
        return {[va = a.value, vb = b.value](Index k, const Point &x) { return va(k, x) - vb(k, x); },
                [ga = a.gradient, gb = b.gradient](Index k, const Point &x) { return Point(ga(k, x) - gb(k, x)); }};
    }

    inline CellwiseFunction scaled(CellwiseFunction a, double s)
    {
        return {[v = a.value, s](Index k, const Point &x) { return s * v(k, x); },
                [g = a.gradient, s](Index k, const Point &x) { return Point(s * g(k, x)); }};
    }
}

#endif
