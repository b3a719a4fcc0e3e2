#pragma once

// Everything except the command-line front end.

#include "dw/cochain.hpp"
#include "dw/cyclotomic.hpp"
#include "dw/error.hpp"
#include "dw/flatness.hpp"
#include "dw/geometry.hpp"
#include "dw/group.hpp"
#include "dw/io.hpp"
#include "dw/pachner.hpp"
#include "dw/rational.hpp"
#include "dw/statesum.hpp"
#include "dw/triangulation.hpp"
