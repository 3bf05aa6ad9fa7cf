#include <catch2/catch.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "taut/cli_app.hpp"

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = taut::cli::run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name)
        : path((std::filesystem::temp_directory_path() / name).string()) {
        std::remove(path.c_str());
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("psi subcommand") {
    auto r = run({"psi", "--g", "0", "--d", "1,0,0,0"});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");

    r = run({"psi", "--g", "1", "--d", "1"});
    CHECK(r.out == "1/24\n");

    r = run({"psi", "--g", "0", "--d", "1,0,0,0", "--format", "json"});
    CHECK(r.out == R"({"terms":[{"pi_power":0,"num":"1","den":"1"}]})"
                   "\n");
}

TEST_CASE("kappa-psi subcommand") {
    auto r = run({"kappa-psi", "--g", "0", "--d", "0,0,0,0", "--ell", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");
    r = run({"kappa-psi", "--g", "1", "--d", "0", "--ell", "1"});
    CHECK(r.out == "1/24\n");
}

TEST_CASE("volume subcommand formats") {
    auto latex = run({"volume", "--g", "0", "--n", "4", "--normalization", "mirzakhani",
                      "--format", "latex"});
    CHECK(latex.code == 0);
    CHECK(latex.out == "2\\pi^2 + \\tfrac12(b_1^2+b_2^2+b_3^2+b_4^2)\n");

    auto plain = run({"volume", "--g", "0", "--n", "4"});
    CHECK(plain.out == "2*pi^2 + 1/2*(b1^2+b2^2+b3^2+b4^2)\n");

    auto kaehler = run({"volume", "--g", "0", "--n", "4", "--normalization", "kaehler"});
    CHECK(kaehler.out == "pi^2 + 1/4*(b1^2+b2^2+b3^2+b4^2)\n");

    // convention note lands on stderr, keeping stdout byte-stable
    auto v11 = run({"volume", "--g", "1", "--n", "1"});
    CHECK(v11.out == "1/12*pi^2 + 1/48*b1^2\n");
    CHECK(v11.err.find("involution") != std::string::npos);
}

TEST_CASE("tz subcommands") {
    CHECK(run({"tz-volume", "--g", "0", "--n", "4"}).out == "3\n");
    CHECK(run({"tz-volume", "--g", "1", "--n", "1"}).out == "1/32\n");
    CHECK(run({"tz-pairing", "--g", "0", "--n", "4", "--a", "0,0,0,0", "--m", "1"}).out ==
          "pi^2\n");
    CHECK(run({"tz-pairing", "--g", "1", "--n", "1", "--a", "1", "--m", "0"}).out ==
          "1/32\n");
}

TEST_CASE("pairing subcommand") {
    CHECK(run({"pairing", "--g", "0", "--n", "4", "--term", "wp"}).out == "pi^2\n");
    CHECK(run({"pairing", "--g", "0", "--n", "4", "--term", "tz-total"}).out == "3\n");
    CHECK(run({"pairing", "--g", "0", "--n", "4", "--term", "psi:1"}).out == "1\n");
    CHECK(run({"pairing", "--g", "0", "--n", "4", "--term", "det:0"}).out == "-1/4\n");
    CHECK(run({"pairing", "--g", "0", "--n", "5", "--term", "wp^2"}).out == "5*pi^4\n");
    CHECK(run({"pairing", "--g", "0", "--n", "5", "--term", "pinched:2", "--term",
               "psi:1"})
              .code == 0);
}

TEST_CASE("volume-eval subcommand") {
    auto r = run({"volume-eval", "--g", "0", "--n", "4", "--b", "0,0,0,0"});
    CHECK(r.code == 0);
    CHECK(std::stod(r.out) == Approx(19.739208802178716).margin(1e-9));
    r = run({"volume-eval", "--g", "0", "--n", "4", "--b", "2,0,0,0"});
    CHECK(std::stod(r.out) == Approx(21.739208802178716).margin(1e-9));
    CHECK(run({"volume-eval", "--g", "0", "--n", "4", "--b", "1,2"}).code == 2);
    CHECK(run({"volume-eval", "--g", "0", "--n", "4", "--b", "0,0,0,0", "--format",
               "latex"})
              .code == 2);
}

TEST_CASE("det-index subcommand") {
    auto r = run({"det-index", "--k", "0", "--n", "2"});
    CHECK(r.out == "1/12*kappa1 - 1/12*psi_1 - 1/12*psi_2\n");
    auto lx = run({"det-index", "--k", "0", "--n", "2", "--format", "latex"});
    CHECK(lx.out == "\\tfrac{1}{12}\\kappa_1 - \\tfrac{1}{12}\\psi_1 - \\tfrac{1}{12}\\psi_2\n");
}

TEST_CASE("cusp subcommands") {
    auto ratio = run({"cusp-ratio", "--germ", "1,0", "--z", "0.0001,0"});
    CHECK(ratio.code == 0);
    CHECK(std::stod(ratio.out) == Approx(1.0).epsilon(1e-12));

    auto limit = run({"cusp-limit", "--germ", "2,0", "--format", "json"});
    CHECK(limit.code == 0);
    CHECK(limit.out.find("\"converged\":true") != std::string::npos);

    auto mono = run({"cusp-monotone", "--germ", "2,0", "--lmin", "0.3", "--lmax", "1.0",
                     "--steps", "8", "--samples", "32"});
    CHECK(mono.code == 0);
    CHECK(mono.out.find("max: strictly increasing") != std::string::npos);

    auto unity = run({"cusp-monotone", "--germ", "0.5403023058681398,0.8414709848078965",
                      "--lmin", "0.3", "--lmax", "1.0", "--steps", "8", "--samples", "32"});
    CHECK(unity.out.find("max: constant ≡ 1") != std::string::npos);
}

TEST_CASE("validation and resource exit codes") {
    CHECK(run({"psi", "--g", "0", "--d", "0,0"}).code == 2);        // unstable
    CHECK(run({"psi", "--g", "0"}).code == 2);                      // missing --d
    CHECK(run({"nonsense"}).code == 2);                             // unknown subcommand
    CHECK(run({"psi", "--g", "2", "--d", "2,2,2", "--max-memo-entries", "4"}).code == 3);
    CHECK(run({}).code == 2);                                       // subcommand required
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("byte-identical output for identical queries") {
    auto a = run({"volume", "--g", "1", "--n", "2", "--format", "json"});
    auto b = run({"volume", "--g", "1", "--n", "2", "--format", "json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("cache round trip is transparent") {
    TempFile cache("taut_test_cache.jsonl");

    auto cold = run({"psi", "--g", "2", "--d", "2,3", "--cache", cache.path});
    CHECK(cold.code == 0);
    CHECK(cold.out == "29/5760\n");
    CHECK(std::filesystem::exists(cache.path));

    auto warm = run({"psi", "--g", "2", "--d", "2,3", "--cache", cache.path});
    CHECK(warm.out == cold.out);

    auto inspect = run({"cache", "inspect", "--cache", cache.path});
    CHECK(inspect.code == 0);
    CHECK(inspect.out.find("entries") != std::string::npos);

    // file carries the versioned header
    std::ifstream in(cache.path);
    std::string header;
    std::getline(in, header);
    CHECK(header == R"({"format":"taut-cache","version":1})");

    auto cleared = run({"cache", "clear", "--cache", cache.path});
    CHECK(cleared.code == 0);
    CHECK_FALSE(std::filesystem::exists(cache.path));

    // --no-cache leaves no file behind
    auto nocache = run({"psi", "--g", "0", "--d", "1,0,0,0", "--cache", cache.path,
                        "--no-cache"});
    CHECK(nocache.out == "1\n");
    CHECK_FALSE(std::filesystem::exists(cache.path));
}

TEST_CASE("cache is transparent for mixed kappa keys") {
    TempFile cache("taut_kappa_cache.jsonl");
    auto cold = run({"kappa-psi", "--g", "1", "--d", "0,0", "--ell", "2", "--cache",
                     cache.path});
    CHECK(cold.code == 0);
    auto warm = run({"kappa-psi", "--g", "1", "--d", "0,0", "--ell", "2", "--cache",
                     cache.path});
    CHECK(warm.out == cold.out);
    // the same store also serves volume reconstruction
    auto vol = run({"volume", "--g", "1", "--n", "2", "--cache", cache.path});
    CHECK(vol.code == 0);
}

TEST_CASE("corrupt or unversioned caches are rejected") {
    TempFile cache("taut_bad_cache.jsonl");
    {
        std::ofstream out(cache.path);
        out << "not json at all\n";
    }
    CHECK(run({"psi", "--g", "1", "--d", "1", "--cache", cache.path}).code == 2);
    {
        std::ofstream out(cache.path, std::ios::trunc);
        out << R"({"format":"taut-cache","version":99})"
            << "\n";
    }
    CHECK(run({"psi", "--g", "1", "--d", "1", "--cache", cache.path}).code == 2);
}

TEST_CASE("fractional pinching parameter stays exact") {
    auto r = run({"pairing", "--g", "0", "--n", "4", "--term", "pinched:1/2"});
    CHECK(r.code == 0);
    CHECK(r.out == "1/4 + pi^2\n");
    // same value written as a decimal
    auto dec = run({"pairing", "--g", "0", "--n", "4", "--term", "pinched:0.5"});
    CHECK(dec.out == r.out);
}

TEST_CASE("TAUT_CACHE environment variable") {
    TempFile cache("taut_env_cache.jsonl");
    setenv("TAUT_CACHE", cache.path.c_str(), 1);
    auto r = run({"psi", "--g", "1", "--d", "1"});
    unsetenv("TAUT_CACHE");
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(cache.path));
}
