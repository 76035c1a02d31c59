#pragma once

#include <stdexcept>
#include <string>

namespace cnet {

/// Broad classes of failure. The CLI maps these onto exit codes.
enum class ErrorKind {
    InvalidArgument,
    Domain,
    Numeric,
    Network,
    Ambiguity,
    Reparametrization,
    Graph,
    Parse,
    Validation,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

    /// True for failures caused by the numbers rather than by the input's shape.
    [[nodiscard]] bool is_numeric() const noexcept
    {
        return kind_ == ErrorKind::Numeric || kind_ == ErrorKind::Reparametrization;
    }

private:
    ErrorKind kind_;
};

#define CNET_DEFINE_ERROR(Name, Kind)                                                  \
    class Name : public Error {                                                        \
    public:                                                                            \
        explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {}       \
    };

CNET_DEFINE_ERROR(InvalidArgument, InvalidArgument)
CNET_DEFINE_ERROR(DomainError, Domain)
CNET_DEFINE_ERROR(NetworkError, Network)
CNET_DEFINE_ERROR(AmbiguityError, Ambiguity)
CNET_DEFINE_ERROR(ReparametrizationError, Reparametrization)
CNET_DEFINE_ERROR(GraphError, Graph)
CNET_DEFINE_ERROR(ParseError, Parse)
CNET_DEFINE_ERROR(ValidationError, Validation)
CNET_DEFINE_ERROR(IoError, Io)

#undef CNET_DEFINE_ERROR

/// Numeric failure; `index` is the offending pivot/row when one is known, else -1.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what, long index = -1)
        : Error(ErrorKind::Numeric, what), index_(index)
    {
    }

    [[nodiscard]] long index() const noexcept { return index_; }

private:
    long index_;
};

} // namespace cnet
