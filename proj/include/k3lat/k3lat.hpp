#pragma once

#include "k3lat/catalog.hpp"
#include "k3lat/discriminant.hpp"
#include "k3lat/elliptic.hpp"
#include "k3lat/embedding.hpp"
#include "k3lat/integer.hpp"
#include "k3lat/io/json.hpp"
#include "k3lat/k3.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/matrix.hpp"
#include "k3lat/qform/binary.hpp"
#include "k3lat/qform/certificate.hpp"
#include "k3lat/qform/forms.hpp"
#include "k3lat/qform/represent.hpp"
#include "k3lat/qform/sieve.hpp"
#include "k3lat/qform/ternary.hpp"
#include "k3lat/qform/verify.hpp"
#include "k3lat/smith.hpp"
