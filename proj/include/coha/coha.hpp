#pragma once

#include <coha/dt.hpp>
#include <coha/json_io.hpp>
#include <coha/plethystic.hpp>
#include <coha/qrational.hpp>
#include <coha/quiver.hpp>
#include <coha/quiver_io.hpp>
#include <coha/shuffle.hpp>
#include <coha/torus.hpp>
