#include "cli.hpp"

#include "cse/derive.hpp"
#include "cse/error.hpp"
#include "cse/machine.hpp"
#include "cse/printer.hpp"
#include "cse/reader.hpp"
#include "cse/trace.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace cse::cli {

namespace {

std::optional<std::string> read_input(const CliConfig& config, std::istream& in, std::ostream& err) {
    std::ostringstream buffer;
    if (config.input == "-") {
        buffer << in.rdbuf();
        return buffer.str();
    }
    std::ifstream file(config.input, std::ios::binary);
    if (!file) {
        err << "error: cannot read " << config.input << "\n";
        return std::nullopt;
    }
    buffer << file.rdbuf();
    return buffer.str();
}

void report(const parse_error& e, std::ostream& err) {
    err << "parse error at " << to_string(e.span()) << ": " << e.message() << "\n";
}

int report(const eval_error& e, std::ostream& err) {
    if (e.kind() == error_kind::step_limit_exceeded) {
        err << e.message() << "\n";
        return step_limit_failure;
    }
    err << "error: " << to_string(e.kind()) << ": " << e.message() << " (state " << e.step();
    if (e.span()) {
        err << ", at " << to_string(*e.span());
    }
    err << ")\n";
    return runtime_failure;
}

/// Parses the program, reporting syntax errors. Null on failure.
std::optional<std::vector<ExprPtr>> parse(const std::string& source, std::ostream& err) {
    try {
        return parse_program(source);
    } catch (const parse_error& e) {
        report(e, err);
        return std::nullopt;
    }
}

bool write_output(const CliConfig& config, const std::string& text, std::ostream& out,
                  std::ostream& err) {
    if (config.output.empty() || config.output == "-") {
        out << text;
        return true;
    }
    std::ofstream file(config.output, std::ios::binary);
    if (!file || !(file << text)) {
        err << "error: cannot write " << config.output << "\n";
        return false;
    }
    return true;
}

}  // namespace

int cmd_run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto source = read_input(config, in, err);
    if (!source) {
        return usage_failure;
    }
    const auto program = parse(*source, err);
    if (!program) {
        return parse_failure;
    }
    State state = inject(*program);
    try {
        drive(state, config.machine());
    } catch (const eval_error& e) {
        out << state.output << std::flush;
        return report(e, err);
    }
    const Value value = final_value(state);
    std::string text = state.output;
    if (!value.is<Unspecified>()) {
        text += write_value(value, state.pairs) + "\n";
    }
    if (!write_output(config, text, out, err)) {
        return usage_failure;
    }
    err << "steps: " << state.step_number << "\n";
    return ok;
}

int cmd_trace(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto source = read_input(config, in, err);
    if (!source) {
        return usage_failure;
    }
    TraceDocument doc;
    try {
        doc = record(*source, config.machine());
    } catch (const parse_error& e) {
        report(e, err);
        return parse_failure;
    }
    if (!write_output(config, doc.serialize(), out, err)) {
        return usage_failure;
    }
    const std::string kind = doc.outcome["kind"];
    if (kind == "value") {
        return ok;
    }
    err << doc.outcome["repr"].get<std::string>() << "\n";
    return kind == "step_limit" ? step_limit_failure : runtime_failure;
}

int cmd_derive(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto source = read_input(config, in, err);
    if (!source) {
        return usage_failure;
    }
    const auto program = parse(*source, err);
    if (!program) {
        return parse_failure;
    }
    std::ostringstream text;
    State state = inject(*program);
    int status = ok;
    try {
        drive(state, config.machine(), [&](const State& s, std::optional<rule> applied) {
            if (applied) {
                text << "\xE2\x86\x93\n";
            }
            text << render_state(s) << "\n";
        });
    } catch (const eval_error& e) {
        status = report(e, err);
    }
    text << "\nframes:\n" << render_frames(state);
    if (!write_output(config, text.str(), out, err)) {
        return usage_failure;
    }
    return status;
}

struct TraceServer::Impl {
    std::string body;
    httplib::Server server;
};

TraceServer::TraceServer(std::string trace_body) : impl_(std::make_unique<Impl>()) {
    impl_->body = std::move(trace_body);
    httplib::Server& server = impl_->server;
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    const std::string& body = impl_->body;
    server.Get("/trace", [&body](const httplib::Request&, httplib::Response& res) {
        res.set_content(body, "application/json");
    });
    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("ok", "text/plain");
    });
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

TraceServer::~TraceServer() { stop(); }

int TraceServer::bind(int port) {
    if (port == 0) {
        return impl_->server.bind_to_any_port("127.0.0.1");
    }
    return impl_->server.bind_to_port("127.0.0.1", port) ? port : -1;
}

void TraceServer::listen() { impl_->server.listen_after_bind(); }

void TraceServer::stop() {
    if (impl_) {
        impl_->server.stop();
    }
}

int cmd_serve(const CliConfig& config, std::istream& in, std::ostream& err) {
    const auto source = read_input(config, in, err);
    if (!source) {
        return usage_failure;
    }
    TraceDocument doc;
    try {
        doc = record(*source, config.machine());
    } catch (const parse_error& e) {
        report(e, err);
        return parse_failure;
    }
    TraceServer server(doc.serialize());
    if (server.bind(config.port) < 0) {
        err << "error: cannot listen on port " << config.port << "\n";
        return runtime_failure;
    }
    err << "serving trace on http://127.0.0.1:" << config.port << "/trace\n";
    server.listen();
    return ok;
}

int main(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
         std::ostream& err) {
    CLI::App app{"CSE machine for SICP Scheme", "cse"};
    app.require_subcommand(1);
    CliConfig config;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", config.input, "Scheme source file, or - for stdin");
        sub->add_option("--step-limit", config.step_limit, "Maximum number of machine states")
            ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
        sub->add_flag("--proper-tail-calls", config.proper_tail_calls,
                      "Do not push ENV when the caller's environment is restored anyway");
    };
    for (const char* name : {"run", "trace", "derive"}) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub);
        sub->add_option("-o,--output", config.output, "Write to this file instead of stdout");
    }
    app.get_subcommand("run")->description("Evaluate a program and print its value");
    app.get_subcommand("trace")->description("Write the JSON state trace");
    app.get_subcommand("derive")->description("Print the derivation, one state per line");
    CLI::App* serve = app.add_subcommand("serve", "Serve the trace over HTTP");
    add_common(serve);
    serve->add_option("--port", config.port, "Port to listen on")->check(CLI::Range(1, 65535));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return usage_failure;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    config.command = command;
    if (command == "run") return cmd_run(config, in, out, err);
    if (command == "trace") return cmd_trace(config, in, out, err);
    if (command == "derive") return cmd_derive(config, in, out, err);
    return cmd_serve(config, in, err);
}

}  // namespace cse::cli
