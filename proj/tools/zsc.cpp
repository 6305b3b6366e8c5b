#include <string>
#include <vector>

#include "zsc/pipeline_cli/pipeline.hpp"

int main(int argc, char** argv) { return zsc::run_cli(std::vector<std::string>(argv + 1, argv + argc)); }
