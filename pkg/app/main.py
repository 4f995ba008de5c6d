import streamlit as st
import pandas as pd
from typing import Optional
import sys, os

# Ensure parent directory (package root) is on sys.path for imports
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

# Local imports
from core.classifier import classify, open_cases, two_power_certificate
from core.closed_forms import (
    residue_class_sum_closed,
    weight_pow2_closed,
    weight_pow2_plus1_closed,
    weight_two_powers_closed,
)
from core.combinatorics import residue_class_sum
from core.errors import EsbfError
from core.experiments import PRESETS, run_experiment
from core.sweep import CSV_COLUMNS, SweepRecord, summarize
from core.weights import Esbf, value_vector, weight_exact


st.set_page_config(page_title="ESBF Verifier", page_icon="🧮", layout="wide")


def render_loading_animation(label: str = "Calculando..."):
    st.markdown(
        f"""
        <style>
        .loader-wrap {{
            display: flex; align-items: center; gap: 12px;
            padding: 14px 16px; border-radius: 12px; border: 1px solid #2e3440;
            background: #0f1420; color: #e5e7eb; font-weight: 500;
        }}
        .loader {{
            width: 24px; height: 24px; border: 3px solid #374151;
            border-top-color: #22d3ee; border-radius: 50%;
            animation: spin 0.9s linear infinite;
        }}
        @keyframes spin {{ to {{ transform: rotate(360deg); }} }}
        </style>
        <div class="loader-wrap">
          <div class="loader"></div>
          <div>{label}</div>
        </div>
        """,
        unsafe_allow_html=True,
    )


def esbf_inputs(key_prefix: str) -> Optional[Esbf]:
    c1, c2 = st.columns(2)
    with c1:
        n = st.number_input("n (variáveis)", min_value=1, value=7, step=1, key=f"{key_prefix}_n")
    with c2:
        d = st.number_input("d (grau)", min_value=1, value=2, step=1, key=f"{key_prefix}_d")
    try:
        return Esbf(int(n), int(d))
    except EsbfError as e:
        st.error(str(e))
        return None


def page_weight():
    st.header("Peso exato")
    e = esbf_inputs("weight")
    if e is None:
        return
    if st.button("Calcular peso"):
        report = weight_exact(e)
        st.metric("wt(σ_{n,d})", str(report.weight))
        st.write(
            {
                "weight_hex": report.weight_hex,
                "2^(n-1)": str(e.half),
                "tricotomia": report.trichotomy.value,
                "balanceada": report.balanced,
            }
        )
        st.caption("Vetor de valores simplificado (nível de peso i → σ_{n,d})")
        st.dataframe(pd.DataFrame({"i": range(e.n + 1), "valor": value_vector(e).bits}))


def page_classify():
    st.header("Classificar")
    e = esbf_inputs("classify")
    if e is None:
        return
    if st.button("Classificar"):
        verdict = classify(e)
        if verdict.kind.balanced:
            st.success(f"{verdict.kind.value} ({verdict.rule})")
        elif verdict.kind.open:
            st.warning(f"{verdict.kind.value} ({verdict.rule})")
            cert = two_power_certificate(e)
            if cert:
                st.info(f"Certificado: wt(σ_(n,2^{cert[0]}+2^{cert[1]})) < 2^(n-1), logo não balanceada.")
        else:
            st.info(f"{verdict.kind.value} ({verdict.rule})")
        st.dataframe(pd.DataFrame([{"condição": s.condition, "resultado": s.outcome} for s in verdict.trace]))


def page_open_cases():
    st.header("Casos em aberto")
    n_max = st.number_input("n máximo", min_value=3, value=64, step=1, key="open_n_max")
    if st.button("Listar"):
        render_loading_animation()
        try:
            rows = []
            for e in open_cases(int(n_max)):
                cert = two_power_certificate(e)
                rows.append(
                    {
                        "n": e.n,
                        "d": e.d,
                        "kind": classify(e).kind.value,
                        "certificate": f"t={cert[0]},s={cert[1]}" if cert else "",
                    }
                )
            st.success(f"{len(rows)} pares em aberto.")
            st.dataframe(pd.DataFrame(rows, columns=["n", "d", "kind", "certificate"]))
        except EsbfError as e:
            st.error(f"Erro: {e}")


def page_closed_forms():
    st.header("Formas fechadas")
    form = st.selectbox(
        "Fórmula",
        ["A_n^(2^p)(i)", "wt(σ_(n,2^t))", "wt(σ_(n,2^t+1))", "wt(σ_(n,2^t+2^s))"],
    )
    n = int(st.number_input("n", min_value=1, value=12, step=1, key="cf_n"))
    c1, c2 = st.columns(2)
    with c1:
        a = int(st.number_input("p ou t", min_value=1, value=1, step=1, key="cf_a"))
    with c2:
        b = int(st.number_input("i ou s", min_value=0, value=2, step=1, key="cf_b"))
    bits = st.number_input("Precisão inicial (bits, 0 = padrão)", min_value=0, value=0, step=8, key="cf_bits")
    if st.button("Avaliar"):
        precision = int(bits) or None
        try:
            if form.startswith("A_n"):
                result = residue_class_sum_closed(n, a, b, precision_bits=precision)
                exact = residue_class_sum(n, 1 << a, b)
            elif form == "wt(σ_(n,2^t))":
                result = weight_pow2_closed(n, a, precision_bits=precision)
                exact = weight_exact(Esbf(n, 1 << a)).weight
            elif form == "wt(σ_(n,2^t+1))":
                result = weight_pow2_plus1_closed(n, a, precision_bits=precision)
                exact = weight_exact(Esbf(n, (1 << a) + 1)).weight
            else:
                result = weight_two_powers_closed(n, a, b, precision_bits=precision)
                exact = weight_exact(Esbf(n, (1 << a) + (1 << b))).weight
            st.write(
                {
                    "arredondado": str(result.nearest),
                    "exato": str(exact),
                    "cota de erro": float(result.error_bound),
                    "bits": result.precision_bits,
                    "escalonamentos": result.escalations,
                }
            )
            if result.nearest == exact:
                st.success("Forma fechada confere com o valor exato.")
            else:
                st.error("Divergência entre forma fechada e valor exato.")
        except EsbfError as e:
            st.error(f"Erro: {e}")


def page_experiments():
    st.header("Experimentos d = 2^t + 2^s")
    name = st.selectbox("Preset", sorted(PRESETS))
    spec = PRESETS[name]
    l_max = st.number_input(
        "l máximo", min_value=spec.l_min, max_value=spec.l_max, value=min(spec.l_max, 31), step=2, key="exp_l_max"
    )
    if st.button("Executar"):
        render_loading_animation("Calculando pesos exatos...")
        try:
            report = run_experiment(spec.scaled(l_max=int(l_max)))
            st.write(report.summary_line())
            if report.ok:
                st.success("Sem desvios.")
            else:
                st.error("Há desvios ou falta testemunha Greater.")
            st.subheader("Desvios")
            st.dataframe(report.deviations)
            st.subheader("Testemunhas Greater")
            st.dataframe(report.witnesses)
        except EsbfError as e:
            st.error(f"Erro: {e}")


def page_sweep_report():
    st.header("Relatório de varredura")
    st.caption("Envie o CSV gerado por `python -m app.cli sweep N --output arquivo.csv`")
    file = st.file_uploader("Arquivo (CSV ou Excel)", type=["csv", "xlsx"])
    if not file:
        return
    try:
        if file.name.endswith(".csv"):
            df = pd.read_csv(file, dtype={"weight_hex": str}, keep_default_na=False)
        else:
            df = pd.read_excel(file, dtype={"weight_hex": str}).fillna("")
        missing = [c for c in CSV_COLUMNS if c not in df.columns]
        if missing:
            st.error(f"Colunas ausentes: {', '.join(missing)}")
            return
        records = [
            SweepRecord(int(r.n), int(r.d), str(r.weight_hex), r.trichotomy, r.verdict_kind, r.rule)
            for r in df.itertuples(index=False)
        ]
        summary = summarize(records)
        st.write(summary.line())
        st.dataframe(pd.DataFrame(sorted(summary.per_kind.items()), columns=["kind", "pares"]))
        if summary.ok:
            st.success("Nenhuma violação de corretude.")
        else:
            st.error(f"{len(summary.violations)} violações, {len(summary.family_mismatches)} pares fora da família.")
            st.dataframe(pd.DataFrame(summary.violations, columns=["n", "d", "motivo"]))
    except Exception as e:
        st.error(f"Erro ao ler relatório: {e}")


def main():
    st.title("ESBF Verifier")
    st.caption("Pesos exatos e balanceamento de funções booleanas simétricas elementares.")
    # Oculta o ícone de link que aparece ao lado dos títulos ao passar o mouse
    st.markdown(
        """
        <style>
        h1 a, h2 a, h3 a, h4 a, h5 a, h6 a { display: none !important; visibility: hidden !important; }
        </style>
        """,
        unsafe_allow_html=True,
    )

    page = st.sidebar.radio(
        "Objetivo",
        ["Peso exato", "Classificar", "Casos em aberto", "Formas fechadas", "Experimentos", "Relatório de varredura"],
        index=0,
    )

    if page == "Peso exato":
        page_weight()
    elif page == "Classificar":
        page_classify()
    elif page == "Casos em aberto":
        page_open_cases()
    elif page == "Formas fechadas":
        page_closed_forms()
    elif page == "Experimentos":
        page_experiments()
    else:
        page_sweep_report()


if __name__ == "__main__":
    main()
