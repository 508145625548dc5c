#include "dofrac/format.hpp"

#include <charconv>
#include <stdexcept>

namespace dofrac {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

} // namespace dofrac
