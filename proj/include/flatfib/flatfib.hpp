#ifndef FLATFIB_FLATFIB_HPP
#define FLATFIB_FLATFIB_HPP

#include "flatfib/rational.hpp"
#include "flatfib/linalg.hpp"
#include "flatfib/lattice.hpp"
#include "flatfib/isometry.hpp"
#include "flatfib/group.hpp"
#include "flatfib/fiber.hpp"
#include "flatfib/calabi.hpp"
#include "flatfib/classify.hpp"
#include "flatfib/catalog.hpp"
#include "flatfib/report.hpp"

#endif  // FLATFIB_FLATFIB_HPP
