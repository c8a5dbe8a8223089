// Python bindings for the core operations: bit strings, field arithmetic,
// the invertible hash, codes, MACs, channel models, the closed-form rate
// toolkit, and the protocol round/session machinery.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "krue/analysis.hpp"
#include "krue/bits.hpp"
#include "krue/channel.hpp"
#include "krue/ecc.hpp"
#include "krue/errors.hpp"
#include "krue/gf2.hpp"
#include "krue/invhash.hpp"
#include "krue/mac.hpp"
#include "krue/protocol.hpp"

namespace py = pybind11;
using namespace krue;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Unclonable encryption with key recycling: core operations";

    // Library errors surface as one Python exception type; the message
    // carries the specific failure.
    py::register_exception<Error>(m, "KrueError");

    py::class_<Bitstring>(m, "Bitstring")
        .def(py::init<size_t>(), py::arg("len") = 0)
        .def_static("zeros", &Bitstring::zeros, py::arg("len"))
        .def_static("from_uint", &Bitstring::from_uint, py::arg("value"), py::arg("len"))
        .def_static("from_string", [](const std::string& s) { return Bitstring::from_string(s); },
                    py::arg("s"))
        .def_static("from_hex", [](const std::string& h, size_t len) {
            return Bitstring::from_hex(h, len);
        }, py::arg("hex"), py::arg("len"))
        .def("__len__", &Bitstring::size)
        .def("__getitem__", &Bitstring::at)
        .def("set", &Bitstring::set)
        .def("__xor__", &Bitstring::operator^)
        .def("concat", &Bitstring::concat)
        .def("slice", &Bitstring::slice)
        .def("prefix", &Bitstring::prefix)
        .def("suffix", &Bitstring::suffix)
        .def("weight", &Bitstring::weight)
        .def("is_zero", &Bitstring::is_zero)
        .def("to_uint", &Bitstring::to_uint)
        .def("to_hex", &Bitstring::to_hex)
        .def("__str__", &Bitstring::to_string)
        .def("__repr__", [](const Bitstring& b) { return "Bitstring(\"" + b.to_string() + "\")"; })
        .def("__eq__", &Bitstring::operator==)
        .def("__ne__", &Bitstring::operator!=)
        .def("__hash__", [](const Bitstring& b) { return std::hash<std::string>()(b.to_string()); });

    py::class_<FieldSpec>(m, "FieldSpec")
        .def(py::init<unsigned, const Bitstring&>(), py::arg("nu"), py::arg("reduction_poly"))
        .def_static("standard", &FieldSpec::standard, py::arg("nu"))
        .def_static("standard_poly", &FieldSpec::standard_poly, py::arg("nu"))
        .def_property_readonly("nu", &FieldSpec::nu)
        .def_property_readonly("reduction_poly", &FieldSpec::reduction_poly)
        .def("__eq__", &FieldSpec::operator==);

    py::class_<FieldElement>(m, "FieldElement")
        .def(py::init<const FieldSpec&, const Bitstring&>(), py::arg("spec"), py::arg("bits"))
        .def_static("zero", &FieldElement::zero)
        .def_static("one", &FieldElement::one)
        .def_static("from_uint", &FieldElement::from_uint, py::arg("spec"), py::arg("value"))
        .def_property_readonly("bits", &FieldElement::bits)
        .def("is_zero", &FieldElement::is_zero)
        .def("__eq__", &FieldElement::operator==)
        .def("__add__", &add)
        .def("__mul__", &mul);
    m.def("add", &add);
    m.def("mul", &mul);
    m.def("inv", &inv);
    m.def("poly_is_irreducible", &poly_is_irreducible);

    m.def("forward", &forward, py::arg("u"), py::arg("x"));
    m.def("pa", &pa, py::arg("u"), py::arg("x"), py::arg("ell"));
    m.def("invert", &invert, py::arg("u"), py::arg("c"), py::arg("r"));

    py::class_<DecodeResult>(m, "DecodeResult")
        .def_readonly("message", &DecodeResult::message)
        .def_readonly("corrected", &DecodeResult::corrected);

    py::class_<CodeSpec>(m, "CodeSpec")
        .def_static("identity", &CodeSpec::identity, py::arg("n"))
        .def_static("hamming74", &CodeSpec::hamming74, py::arg("blocks") = 1)
        .def_static("bch", &CodeSpec::bch, py::arg("m"), py::arg("t"))
        .def_static("from_registry", &CodeSpec::from_registry, py::arg("id"))
        .def_static("from_rows", &CodeSpec::from_rows)
        .def_static("load", &CodeSpec::load, py::arg("path"))
        .def("save", &CodeSpec::save, py::arg("path"))
        .def_property_readonly("n", &CodeSpec::n)
        .def_property_readonly("k", &CodeSpec::k)
        .def_property_readonly("t", &CodeSpec::t)
        .def_property_readonly("id", &CodeSpec::id)
        .def("__eq__", &CodeSpec::operator==);
    m.def("encode", &encode, py::arg("spec"), py::arg("p"));
    m.def("syndrome", &syndrome, py::arg("spec"), py::arg("x"));
    m.def("decode", &decode, py::arg("spec"), py::arg("x"));
    m.def("brute_force_decode", &brute_force_decode, py::arg("spec"), py::arg("x"));

    py::class_<MacSpec>(m, "MacSpec")
        .def(py::init<unsigned, size_t>(), py::arg("lam"), py::arg("msg_len"))
        .def(py::init<unsigned, size_t, const FieldSpec&>())
        .def_property_readonly("lam", &MacSpec::lambda)
        .def_property_readonly("msg_len", &MacSpec::msg_len);
    m.def("tag", &tag, py::arg("spec"), py::arg("key"), py::arg("msg"));
    m.def("verify", &verify, py::arg("spec"), py::arg("key"), py::arg("msg"),
          py::arg("claimed_tag"));
    m.def("tag_feedback", &tag_feedback, py::arg("spec"), py::arg("key"),
          py::arg("masked_bit"));

    py::enum_<Encoding>(m, "Encoding")
        .value("FourState", Encoding::FourState)
        .value("SixState", Encoding::SixState);
    m.def("basis_count", &basis_count);

    py::class_<BasisSeq>(m, "BasisSeq")
        .def(py::init<Encoding, std::vector<uint8_t>>(), py::arg("enc"), py::arg("bases"))
        .def_property_readonly("encoding", &BasisSeq::encoding)
        .def("__len__", &BasisSeq::size)
        .def("__getitem__", [](const BasisSeq& b, size_t i) {
            if (i >= b.size()) throw py::index_error();
            return b[i];
        })
        .def("__eq__", &BasisSeq::operator==);

    py::class_<ChannelModel>(m, "ChannelModel")
        .def_static("ideal", &ChannelModel::ideal)
        .def_static("bsc", &ChannelModel::bsc, py::arg("gamma"))
        .def_static("intercept_resend", &ChannelModel::intercept_resend)
        .def_property_readonly("gamma", &ChannelModel::gamma);

    py::class_<RandomStream>(m, "RandomStream")
        .def(py::init<uint64_t>(), py::arg("seed"))
        .def("word", &RandomStream::word)
        .def("bit", &RandomStream::bit)
        .def("below", &RandomStream::below, py::arg("bound"))
        .def("bernoulli", &RandomStream::bernoulli, py::arg("p"))
        .def("bits", &RandomStream::bits, py::arg("len"));
    m.def("derive_seed", &derive_seed, py::arg("seed"), py::arg("stream_index"));
    m.def("transmit", &transmit, py::arg("x"), py::arg("b"), py::arg("model"), py::arg("rng"));
    m.def("induced_error_rate", &induced_error_rate, py::arg("model"), py::arg("enc"));

    m.def("entropy", &entropy, py::arg("p"));
    m.def("entropy_multi", &entropy_multi, py::arg("ps"));
    m.def("six_state_entropy", &six_state_entropy, py::arg("beta"));
    m.def("floor_nbeta", &floor_nbeta, py::arg("n"), py::arg("beta"));
    m.def("p_corr", &p_corr, py::arg("n"), py::arg("beta"), py::arg("gamma"));

    py::enum_<Scheme>(m, "Scheme")
        .value("QkdOtp", Scheme::QkdOtp)
        .value("Qkr", Scheme::Qkr)
        .value("QkdGottesman", Scheme::QkdGottesman)
        .value("QkrGottesman", Scheme::QkrGottesman)
        .value("Krue", Scheme::Krue)
        .value("QkdKrueStar", Scheme::QkdKrueStar)
        .value("QkrKrueStar", Scheme::QkrKrueStar);
    m.def("scheme_name", &scheme_name);
    m.def("scheme_from_name", &scheme_from_name);
    m.def("scheme_rate", &scheme_rate, py::arg("beta"), py::arg("enc"), py::arg("s"));
    m.def("scheme_rate_clamped", &scheme_rate_clamped, py::arg("beta"), py::arg("enc"),
          py::arg("s"));

    py::class_<RateReport>(m, "RateReport")
        .def_readonly("beta", &RateReport::beta)
        .def_readonly("qkd_otp", &RateReport::qkd_otp)
        .def_readonly("qkr", &RateReport::qkr)
        .def_readonly("qkd_gottesman", &RateReport::qkd_gottesman)
        .def_readonly("qkr_gottesman", &RateReport::qkr_gottesman)
        .def_readonly("krue", &RateReport::krue)
        .def_readonly("qkd_krue_star", &RateReport::qkd_krue_star)
        .def_readonly("qkr_krue_star", &RateReport::qkr_krue_star)
        .def_readonly("ell_max_ue", &RateReport::ell_max_ue)
        .def_readonly("ell_max_kr", &RateReport::ell_max_kr);
    m.def("rates", &rates, py::arg("beta"), py::arg("enc"));
    m.def("scheme_zero", &scheme_zero, py::arg("s"), py::arg("enc"));
    m.def("crossover", &crossover, py::arg("a"), py::arg("b"), py::arg("enc"));
    m.def("key_size", &key_size, py::arg("beta"), py::arg("message_bits"), py::arg("enc"),
          py::arg("s"));
    m.def("rate_table_csv", &rate_table_csv, py::arg("beta_grid"), py::arg("enc"));

    py::class_<ProtocolParams>(m, "ProtocolParams")
        .def_static("make", &ProtocolParams::make, py::arg("n"), py::arg("k"), py::arg("ell"),
                    py::arg("lam"), py::arg("beta"), py::arg("encoding"), py::arg("code"),
                    py::arg("rounds"))
        .def_property_readonly("n", &ProtocolParams::n)
        .def_property_readonly("k", &ProtocolParams::k)
        .def_property_readonly("ell", &ProtocolParams::ell)
        .def_property_readonly("lam", &ProtocolParams::lambda)
        .def_property_readonly("beta", &ProtocolParams::beta)
        .def_property_readonly("encoding", &ProtocolParams::encoding)
        .def_property_readonly("code", &ProtocolParams::code)
        .def_property_readonly("rounds", &ProtocolParams::rounds)
        .def_property_readonly("mu_len", &ProtocolParams::mu_len)
        .def_property_readonly("kappa_len", &ProtocolParams::kappa_len);

    py::class_<KeyReservoir>(m, "KeyReservoir")
        .def(py::init<uint64_t, uint64_t>(), py::arg("seed"),
             py::arg("capacity_bits") = KeyReservoir::kUnlimited)
        .def("draw", &KeyReservoir::draw, py::arg("nbits"))
        .def_property_readonly("consumed", &KeyReservoir::consumed)
        .def_property_readonly("capacity", &KeyReservoir::capacity);
    m.attr("UNLIMITED") = KeyReservoir::kUnlimited;

    py::class_<KeyBundle>(m, "KeyBundle")
        .def_static("draw_initial", &KeyBundle::draw_initial, py::arg("params"),
                    py::arg("reservoir"))
        .def_readonly("z", &KeyBundle::z)
        .def_readonly("k_mac", &KeyBundle::k_mac)
        .def_readonly("b", &KeyBundle::b)
        .def_readonly("k_fb", &KeyBundle::k_fb)
        .def_readonly("k_otp", &KeyBundle::k_otp)
        .def_readonly("u", &KeyBundle::u)
        .def_readonly("e", &KeyBundle::e)
        .def("__eq__", &KeyBundle::operator==);

    py::class_<AugmentedMessage>(m, "AugmentedMessage")
        .def_readonly("mu", &AugmentedMessage::mu)
        .def_readonly("kappa", &AugmentedMessage::kappa)
        .def_readonly("tau", &AugmentedMessage::tau)
        .def("serialize", &AugmentedMessage::serialize);

    py::class_<EncryptResult>(m, "EncryptResult")
        .def_readonly("x", &EncryptResult::x)
        .def_readonly("pending", &EncryptResult::pending)
        .def_readonly("c", &EncryptResult::c)
        .def_readonly("r", &EncryptResult::r)
        .def_readonly("p", &EncryptResult::p);

    py::class_<DecryptResult>(m, "DecryptResult")
        .def_readonly("omega", &DecryptResult::omega)
        .def_readonly("mu_hat", &DecryptResult::mu_hat)
        .def_readonly("kappa_hat", &DecryptResult::kappa_hat)
        .def_readonly("corrected", &DecryptResult::corrected);

    py::class_<FeedbackMsg>(m, "FeedbackMsg")
        .def_readonly("masked", &FeedbackMsg::masked)
        .def_readonly("tau_fb", &FeedbackMsg::tau_fb);

    py::class_<FeedbackRead>(m, "FeedbackRead")
        .def_readonly("omega", &FeedbackRead::omega)
        .def_readonly("tampered", &FeedbackRead::tampered);

    m.def("alice_encrypt", &alice_encrypt, py::arg("params"), py::arg("keys"), py::arg("mu"),
          py::arg("rng"));
    m.def("bob_decrypt", &bob_decrypt, py::arg("params"), py::arg("keys"), py::arg("x_prime"));
    m.def("feedback", &feedback, py::arg("params"), py::arg("keys"), py::arg("omega"));
    m.def("read_feedback", &read_feedback, py::arg("params"), py::arg("keys"), py::arg("msg"));
    m.def("key_update", &key_update, py::arg("params"), py::arg("keys"), py::arg("omega"),
          py::arg("kappa"), py::arg("reservoir"));

    py::class_<RoundRecord>(m, "RoundRecord")
        .def_readonly("round", &RoundRecord::round)
        .def_readonly("omega", &RoundRecord::omega)
        .def_readonly("recovered", &RoundRecord::recovered)
        .def_readonly("errors_corrected", &RoundRecord::errors_corrected)
        .def_readonly("reservoir_bits_used", &RoundRecord::reservoir_bits_used);

    py::class_<SessionReport>(m, "SessionReport")
        .def_readonly("rounds", &SessionReport::rounds)
        .def_readonly("accept_rate", &SessionReport::accept_rate)
        .def_readonly("recovered_count", &SessionReport::recovered_count)
        .def_readonly("initial_draw_bits", &SessionReport::initial_draw_bits)
        .def_readonly("round_draw_bits", &SessionReport::round_draw_bits)
        .def("to_csv", &SessionReport::to_csv);

    py::class_<RoundKeys>(m, "RoundKeys")
        .def_readonly("k_fb", &RoundKeys::k_fb)
        .def_readonly("k_otp", &RoundKeys::k_otp)
        .def_readonly("e", &RoundKeys::e);

    py::class_<Reveal>(m, "Reveal")
        .def_readonly("b", &Reveal::b)
        .def_readonly("u", &Reveal::u)
        .def_readonly("k_mac", &Reveal::k_mac)
        .def_readonly("per_round", &Reveal::per_round)
        .def_readonly("final_z", &Reveal::final_z);

    py::class_<Session>(m, "Session")
        .def(py::init<ProtocolParams, ChannelModel, uint64_t, uint64_t>(), py::arg("params"),
             py::arg("channel"), py::arg("seed"),
             py::arg("reservoir_capacity") = KeyReservoir::kUnlimited)
        .def("run_round", &Session::run_round, py::arg("mu"))
        .def("run", &Session::run, py::arg("messages"))
        .def_property_readonly("params", &Session::params)
        .def_property_readonly("alice_keys", &Session::alice_keys)
        .def_property_readonly("bob_keys", &Session::bob_keys)
        .def_property_readonly("initial_draw_bits", &Session::initial_draw_bits)
        .def("reveal", &Session::reveal)
        .def("save_state", &Session::save_state);
    m.def("run_session", &run_session, py::arg("params"), py::arg("channel"),
          py::arg("messages"), py::arg("seed"));
}
