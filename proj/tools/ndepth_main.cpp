#include "ndepth/cli.hpp"

#include <iostream>

int main(int argc, char **argv)
{
	return ndepth::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
