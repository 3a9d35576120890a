#include "tanlift/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#ifdef _WIN32
#include <io.h>
#define TANLIFT_ISATTY _isatty(_fileno(stdin))
#else
#include <unistd.h>
#define TANLIFT_ISATTY isatty(fileno(stdin))
#endif

namespace {

using namespace tanlift;

void print_report(const Report& rep, bool json) {
    std::cout << (json ? rep.json() : rep.text());
}

int run_source(const std::string& label, const std::string& source, const RunOptions& opts,
               bool json) {
    Script script;
    try {
        script = parse_script(source);
    } catch (const ParseError& e) {
        std::cerr << label << ":" << e.line << ":" << e.col << ": " << e.what() << "\n";
        return 2;
    }
    Report rep = run_script(script, opts);
    print_report(rep, json);
    return rep.all_ok() ? 0 : 1;
}

/// A chunk of input is executable once it ends, outside comments and braces,
/// with ';' or with the '}' that closes a top-level block.
bool chunk_complete(const std::string& buf) {
    int depth = 0;
    bool comment = false;
    char last = 0;
    for (char ch : buf) {
        if (comment) {
            if (ch == '\n') comment = false;
            continue;
        }
        if (ch == '#') {
            comment = true;
            continue;
        }
        if (ch == '{') ++depth;
        if (ch == '}') depth = depth > 0 ? depth - 1 : 0;
        if (!std::isspace(static_cast<unsigned char>(ch))) last = ch;
    }
    return depth == 0 && (last == ';' || last == '}');
}

void print_result(const CommandResult& c) {
    std::cout << "[" << c.index << "] " << c.text << "\n";
    if (c.status == "pass" || c.status == "fail") {
        std::cout << "    " << (c.status == "pass" ? "PASS" : "FAIL") << " " << c.text;
        if (c.trials > 0) std::cout << " (trials " << c.trials << ")";
        std::cout << "\n";
    } else if (c.status == "error") {
        std::cout << "    ERROR\n";
    }
    for (const auto& line : c.output) std::cout << "    " << line << "\n";
}

int repl(const RunOptions& opts) {
    const bool tty = TANLIFT_ISATTY;
    Session session(opts);
    std::string buf, line;
    std::size_t printed = 0;
    if (tty)
        std::cout << "tanlift repl; statements end with ';' (blocks with '}'), ctrl-d exits\n";
    while (true) {
        if (tty) std::cout << (buf.empty() ? "tanlift> " : "   ...> ") << std::flush;
        if (!std::getline(std::cin, line)) break;
        buf += line;
        buf += '\n';
        if (!chunk_complete(buf)) continue;
        try {
            Script script = parse_script(buf);
            for (const auto& st : script.statements) session.execute(st);
            const auto& cmds = session.report().commands;
            for (; printed < cmds.size(); ++printed) print_result(cmds[printed]);
        } catch (const ParseError& e) {
            std::cout << "parse error at line " << e.line << ", col " << e.col << ": "
                      << e.what() << "\n";
        }
        buf.clear();
    }
    if (tty) std::cout << "\n";
    const Report& rep = session.report();
    return rep.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact symbolic calculus of tangent lifts on coordinate charts"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json = false;
    RunOptions opts;
    app.add_flag("--json", json, "emit the report as JSON");
    app.add_option("--seed", opts.seed, "seed for randomized verification");
    app.add_option("--trials", opts.trials, "trials per randomized check")
        ->check(CLI::Range(1, 1000000));
    app.add_option("--dim", opts.dim, "chart dimension for randomized checks")
        ->check(CLI::Range(2, 4));

    std::string file;
    CLI::App* eval = app.add_subcommand("eval", "run a script file and print its report");
    eval->add_option("file", file, "script path")->required();

    std::string suite;
    CLI::App* verify =
        app.add_subcommand("verify", "run a verification suite ('all' runs every suite)");
    verify->add_option("suite", suite, "suite name or 'all'")->required();

    CLI::App* rep = app.add_subcommand("repl", "interactive statement-by-statement session");

    CLI11_PARSE(app, argc, argv);

    if (eval->parsed()) {
        std::ifstream in(file);
        if (!in) {
            std::cerr << "cannot read '" << file << "'\n";
            return 2;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        return run_source(file, ss.str(), opts, json);
    }
    if (verify->parsed()) return run_source("<verify>", "verify " + suite + ";", opts, json);
    if (rep->parsed()) return repl(opts);
    return 2;
}
