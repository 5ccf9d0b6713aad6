#ifndef DIRACSPEC_VERSION_HPP
#define DIRACSPEC_VERSION_HPP

#define DIRACSPEC_VERSION "0.1.0"

#endif
