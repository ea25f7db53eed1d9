#pragma once

#include <stdexcept>
#include <string>

namespace kaczfact {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

// Data matrix has Frobenius norm zero where a nonzero one is required.
class ZeroDataMatrix : public Error {
public:
    using Error::Error;
};

class ZeroMatrix : public Error {
public:
    using Error::Error;
};

// Requested sample size exceeds the sampling universe.
class BlockTooLarge : public Error {
public:
    using Error::Error;
};

// Fewer strictly positive weights than requested draws.
class DegenerateWeights : public Error {
public:
    using Error::Error;
};

// Factor rank must satisfy k < min(m, n).
class RankTooLarge : public Error {
public:
    using Error::Error;
};

class InvalidRecipe : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class EmptyFile : public Error {
public:
    using Error::Error;
};

class InvalidRating : public Error {
public:
    using Error::Error;
};

// Two trace summaries cannot be brought onto a common iteration grid.
class GridMismatch : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace kaczfact
