#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rbtri
{
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class InvalidVertex : public Error
    {
    public:
        using Error::Error;
    };

    class InvalidArgument : public Error
    {
    public:
        using Error::Error;
    };

    class InvalidWitness : public Error
    {
    public:
        using Error::Error;
    };

    class InvalidCertificate : public Error
    {
    public:
        using Error::Error;
    };

    class ParseError : public Error
    {
    public:
        using Error::Error;
    };

    /// Thrown when a node-count budget runs out. Carries the best bracket
    /// [lower, upper] on the quantity being searched for; never a wrong value.
    class BudgetExhausted : public Error
    {
    public:
        BudgetExhausted(const std::string & what, long long lower, long long upper, std::uint64_t nodes) :
            Error(what),
            lower(lower),
            upper(upper),
            nodes(nodes)
        {
        }

        long long lower;
        long long upper;
        std::uint64_t nodes;
    };
}
