#ifndef GLPS_TYPES_HPP
#define GLPS_TYPES_HPP

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace glps
{
    using Index = Eigen::Index;
    using Point = Eigen::Vector2d;
    using Vector = Eigen::VectorXd;
    using Matrix = Eigen::MatrixXd;

    /// Raised for invalid arguments and violated preconditions.
    class Error : public std::runtime_error
    {
    public:
        explicit Error(const std::string &what)
            : std::runtime_error(what)
        { }
    };
}

#endif
