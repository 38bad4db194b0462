#pragma once

#include "wplus/classpoly.hpp"
#include "wplus/level1.hpp"
#include "wplus/modsym.hpp"
#include "wplus/service.hpp"
#include "wplus/supersingular.hpp"
#include "wplus/weierstrass.hpp"
