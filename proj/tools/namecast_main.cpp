#include <CLI11.hpp>
#include <string>

#include "namecast/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"namecast: unsupervised speaker naming for subtitle files"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"extract-names", "discover the character roster and write it as CSV"},
        {"solve", "run the full pipeline and write predictions"},
        {"trace", "like solve, but always write the optimization trace"},
        {"evaluate", "score predictions against gold annotations"},
        {"baseline", "write B1/B2/B3 baseline predictions"},
        {"synth", "materialize a synthetic movie directory"},
    };

    std::string config_path;
    std::string chosen;
    for (const Sub& s : subs) {
        CLI::App* cmd = app.add_subcommand(s.name, s.help);
        cmd->add_option("config", config_path, "pipeline configuration file")->required();
        cmd->callback([&chosen, name = std::string(s.name)] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage problems exit 1
    }

    return namecast::run_subcommand(chosen, config_path);
}
