#!/usr/bin/env python3
"""Offline stand-in for the ChEMBL web services, used to curate fixtures.

Serves the subset of resources the client calls (molecule, similarity,
target, tissue, drug_indication, image, status) from a small hand-curated
dataset. Structure-derived fields (canonical SMILES, formula, InChIKey,
depictions, Tanimoto similarity) are computed with RDKit.

    python3 tools/chembl_emulator.py --port 8765

Then point the client at http://127.0.0.1:8765/chembl/api/data and run
`atreya record`.
"""

import argparse
import json
import re
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qsl, unquote, urlsplit

from rdkit import Chem, DataStructs, RDLogger
from rdkit.Chem import rdFingerprintGenerator, rdMolDescriptors
from rdkit.Chem.Draw import rdMolDraw2D

RDLogger.DisableLog("rdApp.*")

PREFIX = "/chembl/api/data"

# (chembl_id, pref_name, smiles, max_phase, first_approval, usan_stem,
#  usan_stem_definition, atc, synonyms)
MOLECULES = [
    ("CHEMBL112", "PARACETAMOL", "CC(=O)Nc1ccc(O)cc1", 4, 1951, None, None, ["N02BE01"],
     ["Acetaminophen", "Panadol", "Tylenol", "Paracetamole", "Paracetamol"]),
    ("CHEMBL25", "ASPIRIN", "CC(=O)Oc1ccccc1C(=O)O", 4, 1950, None, None, ["N02BA01", "B01AC06"],
     ["Acetylsalicylic acid", "Aspirin"]),
    ("CHEMBL521", "IBUPROFEN", "CC(C)Cc1ccc(C(C)C(=O)O)cc1", 4, 1974, "-profen", "anti-inflammatory/analgesic agents (ibuprofen type)",
     ["M01AE01"], ["Ibuprofen", "Advil", "Nurofen"]),
    ("CHEMBL154", "NAPROXEN", "COc1ccc2cc(C(C)C(=O)O)ccc2c1", 4, 1976, "-profen", "anti-inflammatory/analgesic agents (ibuprofen type)",
     ["M01AE02"], ["Naproxen", "Aleve"]),
    ("CHEMBL139", "DICLOFENAC", "O=C(O)Cc1ccccc1Nc1c(Cl)cccc1Cl", 4, 1988, "-ac", "anti-inflammatory agents (acetic acid derivatives)",
     ["M01AB05"], ["Diclofenac", "Voltaren"]),
    ("CHEMBL118", "CELECOXIB", "Cc1ccc(-c2cc(C(F)(F)F)nn2-c2ccc(S(N)(=O)=O)cc2)cc1", 4, 1998, "-coxib", "selective cyclooxygenase-2 inhibitors",
     ["M01AH01"], ["Celecoxib", "Celebrex"]),
    ("CHEMBL16073", "PHENACETIN", "CCOc1ccc(NC(C)=O)cc1", -1, None, None, None, [], ["Phenacetin"]),
    ("CHEMBL1591", "METACETAMOL", "CC(=O)Nc1cccc(O)c1", None, None, None, None, [], ["Metacetamol", "3-Acetamidophenol"]),
    ("CHEMBL269644", "ACETANILIDE", "CC(=O)Nc1ccccc1", None, None, None, None, [], ["Acetanilide"]),
    ("CHEMBL1142", "4-AMINOPHENOL", "Nc1ccc(O)cc1", None, None, None, None, [], ["4-Aminophenol", "p-Aminophenol"]),
    ("CHEMBL27", "PROPRANOLOL", "CC(C)NCC(O)COc1cccc2ccccc12", 4, 1967, "-olol", "beta-blockers (propranolol type)",
     ["C07AA05"], ["Propranolol", "Inderal"]),
    ("CHEMBL24", "ATENOLOL", "CC(C)NCC(O)COc1ccc(CC(N)=O)cc1", 4, 1981, "-olol", "beta-blockers (propranolol type)",
     ["C07AB03"], ["Atenolol", "Tenormin"]),
    ("CHEMBL13", "METOPROLOL", "COCCc1ccc(OCC(O)CNC(C)C)cc1", 4, 1978, "-olol", "beta-blockers (propranolol type)",
     ["C07AB02"], ["Metoprolol", "Lopressor"]),
    ("CHEMBL723", "CARVEDILOL", "COc1ccccc1OCCNCC(O)COc1cccc2[nH]c3ccccc3c12", 4, 1995, "-olol", "beta-blockers (propranolol type)",
     ["C07AG02"], ["Carvedilol", "Coreg"]),
    ("CHEMBL649", "NADOLOL", "CC(C)(C)NCC(O)COc1cccc2c1CC(O)C(O)C2", 4, 1979, "-olol", "beta-blockers (propranolol type)",
     ["C07AA12"], ["Nadolol", "Corgard"]),
    ("CHEMBL499", "TIMOLOL", "CC(C)(C)NCC(O)COc1nsnc1N1CCOCC1", 4, 1978, "-olol", "beta-blockers (propranolol type)",
     ["C07AA06", "S01ED01"], ["Timolol", "Timoptic"]),
    ("CHEMBL645", "BISOPROLOL", "CC(C)NCC(O)COc1ccc(COCCOC(C)C)cc1", 4, 1992, "-olol", "beta-blockers (propranolol type)",
     ["C07AB07"], ["Bisoprolol", "Zebeta"]),
    ("CHEMBL429", "LABETALOL", "CC(CCc1ccccc1)NCC(O)c1ccc(O)c(C(N)=O)c1", 4, 1984, "-alol", "combined alpha and beta blockers",
     ["C07AG01"], ["Labetalol", "Trandate"]),
    ("CHEMBL768", "ESMOLOL", "COC(=O)CCc1ccc(OCC(O)CNC(C)C)cc1", 4, 1986, "-olol", "beta-blockers (propranolol type)",
     ["C07AB09"], ["Esmolol", "Brevibloc"]),
    ("CHEMBL714", "SALBUTAMOL", "CC(C)(C)NCC(O)c1ccc(O)c(CO)c1", 4, 1982, "-terol", "bronchodilators (phenethylamine derivatives)",
     ["R03AC02"], ["Albuterol", "Salbutamol", "Ventolin"]),
    ("CHEMBL1263", "SALMETEROL", "OCc1cc(C(O)CNCCCCCCOCCCCc2ccccc2)ccc1O", 4, 1994, "-terol", "bronchodilators (phenethylamine derivatives)",
     ["R03AC12"], ["Salmeterol", "Serevent"]),
    ("CHEMBL605", "FORMOTEROL", "COc1ccc(CC(C)NCC(O)c2ccc(O)c(NC=O)c2)cc1", 4, 2001, "-terol", "bronchodilators (phenethylamine derivatives)",
     ["R03AC13"], ["Formoterol", "Foradil"]),
    ("CHEMBL787", "MONTELUKAST", "CC(C)(O)c1ccccc1CCC(SCC1(CC(=O)O)CC1)c1cccc(/C=C/c2ccc3ccc(Cl)cc3n2)c1", 4, 1998, "-lukast", "leukotriene receptor antagonists",
     ["R03DC03"], ["Montelukast", "Singulair"]),
    ("CHEMBL603", "ZAFIRLUKAST", "COc1cc(C(=O)NS(=O)(=O)c2ccccc2C)ccc1Cc1cn(C)c2ccc(NC(=O)OC3CCCC3)cc12", 4, 1996, "-lukast", "leukotriene receptor antagonists",
     ["R03DC01"], ["Zafirlukast", "Accolate"]),
    ("CHEMBL1370", "BUDESONIDE", "CCCC1OC2CC3C4CCC5=CC(=O)C=CC5(C)C4C(O)CC3(C)C2(C(=O)CO)O1", 4, 1981, "-onide", "topical steroids (acetal derivatives)",
     ["R03BA02"], ["Budesonide", "Pulmicort"]),
    ("CHEMBL1473", "FLUTICASONE PROPIONATE", "CCC(=O)OC1(C(=O)SCF)C(C)CC2C3CC(F)C4=CC(=O)C=CC4(C)C3(F)C(O)CC21C", 4, 1990, "-asone", "corticosteroids",
     ["R03BA05"], ["Fluticasone propionate", "Flovent"]),
    ("CHEMBL190", "THEOPHYLLINE", "Cn1c(=O)c2[nH]cnc2n(C)c1=O", 4, None, "-phylline", "theophylline derivatives",
     ["R03DA04"], ["Theophylline", "Theo-24"]),
    ("CHEMBL113", "CAFFEINE", "Cn1c(=O)c2c(ncn2C)n(C)c1=O", 4, None, None, None, ["N06BC01"], ["Caffeine"]),
    ("CHEMBL1908391", "MASITINIB", "Cc1ccc(NC(=O)c2ccc(CN3CCN(C)CC3)cc2)cc1Nc1nc(-c2cccnc2)cs1", 3, None, "-tinib", "tyrosine kinase inhibitors",
     [], ["Masitinib"]),
    ("CHEMBL635", "PREDNISONE", "CC12CC(=O)C3C(CCC4=CC(=O)C=CC43C)C1CCC2(O)C(=O)CO", 4, 1955, "pred", "prednisone and prednisolone derivatives",
     ["H02AB07"], ["Prednisone"]),
    ("CHEMBL384467", "DEXAMETHASONE", "CC1CC2C3CCC4=CC(=O)C=CC4(C)C3(F)C(O)CC2(C)C1(O)C(=O)CO", 4, 1958, "-methasone", "corticosteroids",
     ["H02AB02"], ["Dexamethasone", "Decadron"]),
    ("CHEMBL1431", "METFORMIN", "CN(C)C(=N)N=C(N)N", 4, 1995, "-formin", "antihyperglycemics (phenformin type)",
     ["A10BA02"], ["Metformin", "Glucophage"]),
    ("CHEMBL1487", "ATORVASTATIN", "CC(C)c1c(C(=O)Nc2ccccc2)c(-c2ccccc2)c(-c2ccc(F)cc2)n1CCC(O)CC(O)CC(=O)O", 4, 1996, "-vastatin", "antihyperlipidemics (HMG-CoA reductase inhibitors)",
     ["C10AA05"], ["Atorvastatin", "Lipitor"]),
    ("CHEMBL1064", "SIMVASTATIN", "CCC(C)(C)C(=O)OC1CC(C)C=C2C=CC(C)C(CCC3CC(O)CC(=O)O3)C21", 4, 1991, "-vastatin", "antihyperlipidemics (HMG-CoA reductase inhibitors)",
     ["C10AA01"], ["Simvastatin", "Zocor"]),
    ("CHEMBL1496", "ROSUVASTATIN", "CC(C)c1nc(N(C)S(C)(=O)=O)nc(-c2ccc(F)cc2)c1/C=C/C(O)CC(O)CC(=O)O", 4, 2003, "-vastatin", "antihyperlipidemics (HMG-CoA reductase inhibitors)",
     ["C10AA07"], ["Rosuvastatin", "Crestor"]),
    ("CHEMBL1503", "OMEPRAZOLE", "COc1ccc2[nH]c(S(=O)Cc3ncc(C)c(OC)c3C)nc2c1", 4, 1989, "-prazole", "antiulcer agents (benzimidazole derivatives)",
     ["A02BC01"], ["Omeprazole", "Prilosec"]),
    ("CHEMBL192", "SILDENAFIL", "CCCc1nn(C)c2c(=O)[nH]c(-c3cc(S(=O)(=O)N4CCN(C)CC4)ccc3OCC)nc12", 4, 1998, "-afil", "PDE5 inhibitors",
     ["G04BE03"], ["Sildenafil", "Viagra"]),
    ("CHEMBL941", "IMATINIB", "Cc1ccc(NC(=O)c2ccc(CN3CCN(C)CC3)cc2)cc1Nc1nccc(-c2cccnc2)n1", 4, 2001, "-tinib", "tyrosine kinase inhibitors",
     ["L01EA01"], ["Imatinib", "Gleevec"]),
    ("CHEMBL939", "GEFITINIB", "COc1cc2ncnc(Nc3ccc(F)c(Cl)c3)c2cc1OCCCN1CCOCC1", 4, 2003, "-tinib", "tyrosine kinase inhibitors",
     ["L01EB01"], ["Gefitinib", "Iressa"]),
    ("CHEMBL553", "ERLOTINIB", "C#Cc1cccc(Nc2ncnc3cc(OCCOC)c(OCCOC)cc23)c1", 4, 2004, "-tinib", "tyrosine kinase inhibitors",
     ["L01EB02"], ["Erlotinib", "Tarceva"]),
    ("CHEMBL1336", "SORAFENIB", "CNC(=O)c1cc(Oc2ccc(NC(=O)Nc3ccc(Cl)c(C(F)(F)F)c3)cc2)ccn1", 4, 2005, "-fenib", "raf kinase inhibitors",
     ["L01EX02"], ["Sorafenib", "Nexavar"]),
    ("CHEMBL554", "LAPATINIB", "CS(=O)(=O)CCNCc1ccc(-c2ccc3ncnc(Nc4ccc(OCc5cccc(F)c5)c(Cl)c4)c3c2)o1", 4, 2007, "-tinib", "tyrosine kinase inhibitors",
     ["L01EH01"], ["Lapatinib", "Tykerb"]),
    ("CHEMBL1464", "WARFARIN", "CC(=O)CC(c1ccccc1)c1c(O)c2ccccc2oc1=O", 4, 1954, None, None, ["B01AA03"], ["Warfarin", "Coumadin"]),
    ("CHEMBL12", "DIAZEPAM", "CN1C(=O)CN=C(c2ccccc2)c2cc(Cl)ccc21", 4, 1963, "-azepam", "antianxiety agents (diazepam type)",
     ["N05BA01"], ["Diazepam", "Valium"]),
    ("CHEMBL41", "FLUOXETINE", "CNCCC(Oc1ccc(C(F)(F)F)cc1)c1ccccc1", 4, 1987, "-oxetine", "antidepressants (fluoxetine type)",
     ["N06AB03"], ["Fluoxetine", "Prozac"]),
    ("CHEMBL809", "SERTRALINE", "CNC1CCC(c2ccc(Cl)c(Cl)c2)c2ccccc21", 4, 1991, "-traline", "serotonin uptake inhibitors",
     ["N06AB06"], ["Sertraline", "Zoloft"]),
    ("CHEMBL1237", "LISINOPRIL", "NCCCCC(NC(CCc1ccccc1)C(=O)O)C(=O)N1CCCC1C(=O)O", 4, 1987, "-pril", "antihypertensives (ACE inhibitors)",
     ["C09AA03"], ["Lisinopril", "Zestril"]),
    ("CHEMBL191", "LOSARTAN", "CCCCc1nc(Cl)c(CO)n1Cc1ccc(-c2ccccc2-c2nn[nH]n2)cc1", 4, 1995, "-sartan", "angiotensin II receptor antagonists",
     ["C09CA01"], ["Losartan", "Cozaar"]),
    ("CHEMBL1491", "AMLODIPINE", "CCOC(=O)C1=C(COCCN)NC(C)=C(C(=O)OC)C1c1ccccc1Cl", 4, 1987, "-dipine", "calcium channel blockers (nifedipine type)",
     ["C08CA01"], ["Amlodipine", "Norvasc"]),
    ("CHEMBL1771", "CLOPIDOGREL", "COC(=O)C(c1ccccc1Cl)N1CCc2sccc2C1", 4, 1997, "-grel", "platelet aggregation inhibitors",
     ["B01AC04"], ["Clopidogrel", "Plavix"]),
    ("CHEMBL1422", "SITAGLIPTIN", "NC(CC(=O)N1CCn2c(nnc2C(F)(F)F)C1)Cc1cc(F)c(F)cc1F", 4, 2006, "-gliptin", "dipeptidyl aminopeptidase-IV inhibitors",
     ["A10BH01"], ["Sitagliptin", "Januvia"]),
    ("CHEMBL429910", "DAPAGLIFLOZIN", "CCOc1ccc(Cc2cc(C3OC(CO)C(O)C(O)C3O)ccc2Cl)cc1", 4, 2014, "-gliflozin", "sodium glucose co-transporter inhibitors",
     ["A10BK01"], ["Dapagliflozin", "Farxiga"]),
    ("CHEMBL2107830", "EMPAGLIFLOZIN", "OCC1OC(c2ccc(Cl)c(Cc3ccc(OC4CCOC4)cc3)c2)C(O)C(O)C1O", 4, 2014, "-gliflozin", "sodium glucose co-transporter inhibitors",
     ["A10BK03"], ["Empagliflozin", "Jardiance"]),
    ("CHEMBL231779", "APIXABAN", "COc1ccc(-n2nc(C(N)=O)c3c2C(=O)N(c2ccc(N4CCCCC4=O)cc2)CC3)cc1", 4, 2012, "-xaban", "antithrombotics (factor Xa inhibitors)",
     ["B01AF02"], ["Apixaban", "Eliquis"]),
    ("CHEMBL198362", "RIVAROXABAN", "O=C(NCC1CN(c2ccc(N3CCOCC3=O)cc2)C(=O)O1)c1ccc(Cl)s1", 4, 2011, "-xaban", "antithrombotics (factor Xa inhibitors)",
     ["B01AF01"], ["Rivaroxaban", "Xarelto"]),
    ("CHEMBL221959", "TOFACITINIB", "CC1CCN(C(=O)CC#N)CC1N(C)c1ncnc2[nH]ccc12", 4, 2012, "-citinib", "janus kinase inhibitors",
     ["L04AF01"], ["Tofacitinib", "Xeljanz"]),
    ("CHEMBL1873475", "IBRUTINIB", "C=CC(=O)N1CCCC(n2nc(-c3ccc(Oc4ccccc4)cc3)c3c(N)ncnc32)C1", 4, 2013, "-brutinib", "Bruton's tyrosine kinase inhibitors",
     ["L01EL01"], ["Ibrutinib", "Imbruvica"]),
    ("CHEMBL3353410", "OSIMERTINIB", "C=CC(=O)Nc1cc(Nc2nccc(-c3cn(C)c4ccccc34)n2)c(OC)cc1N(C)CCN(C)C", 4, 2015, "-tinib", "tyrosine kinase inhibitors",
     ["L01EB04"], ["Osimertinib", "Tagrisso"]),
    ("CHEMBL189963", "PALBOCICLIB", "CC(=O)c1c(C)c2cnc(Nc3ccc(N4CCNCC4)cn3)nc2n(C2CCCC2)c1=O", 4, 2015, "-ciclib", "cyclin dependent kinase inhibitors",
     ["L01EF01"], ["Palbociclib", "Ibrance"]),
    ("CHEMBL2105759", "BARICITINIB", "CCS(=O)(=O)N1CC(CC#N)(n2cc(-c3ncnc4[nH]ccc34)cn2)C1", 4, 2018, "-citinib", "janus kinase inhibitors",
     ["L04AF02"], ["Baricitinib", "Olumiant"]),
    ("CHEMBL4535757", "SOTORASIB", "C=CC(=O)N1CCN(c2nc(=O)n(-c3c(C)ccnc3C(C)C)c3nc(-c4c(O)cccc4F)c(F)cc23)C(C)C1", 4, 2021, "-rasib", "RAS inhibitors",
     ["L01XX73"], ["Sotorasib", "Lumakras"]),
    ("CHEMBL940", "GABAPENTIN", "NCC1(CC(=O)O)CCCCC1", 4, 1993, "gab", "gabamimetic agents",
     ["N03AX12"], ["Gabapentin", "Neurontin"]),
    ("CHEMBL1286", "LEVETIRACETAM", "CCC(C(N)=O)N1CCCC1=O", 4, 1999, "-racetam", "nootropes (piracetam type)",
     ["N03AX14"], ["Levetiracetam", "Keppra"]),
    ("CHEMBL46", "ONDANSETRON", "Cc1nccn1CC1CCc2c(c3ccccc3n2C)C1=O", 4, 1991, "-setron", "serotonin 5-HT3 receptor antagonists",
     ["A04AA01"], ["Ondansetron", "Zofran"]),
    ("CHEMBL998", "LORATADINE", "CCOC(=O)N1CCC(=C2c3ccc(Cl)cc3CCc3cccnc32)CC1", 4, 1993, "-atadine", "tricyclic histaminic-H1 receptor antagonists",
     ["R06AX13"], ["Loratadine", "Claritin"]),
    ("CHEMBL1000", "CETIRIZINE", "OC(=O)COCCN1CCN(C(c2ccccc2)c2ccc(Cl)cc2)CC1", 4, 1995, "-irizine", "antihistaminics (hydroxyzine type)",
     ["R06AE07"], ["Cetirizine", "Zyrtec"]),
    ("CHEMBL8", "CIPROFLOXACIN", "O=C(O)c1cn(C2CC2)c2cc(N3CCNCC3)c(F)cc2c1=O", 4, 1987, "-oxacin", "antibacterials (quinolone derivatives)",
     ["J01MA02"], ["Ciprofloxacin", "Cipro"]),
    ("CHEMBL1082", "AMOXICILLIN", "CC1(C)SC2C(NC(=O)C(N)c3ccc(O)cc3)C(=O)N2C1C(=O)O", 4, 1974, "-cillin", "penicillins",
     ["J01CA04"], ["Amoxicillin", "Amoxil"]),
    ("CHEMBL35", "FUROSEMIDE", "NS(=O)(=O)c1cc(C(=O)O)c(NCc2ccco2)cc1Cl", 4, 1966, "-semide", "diuretics (furosemide type)",
     ["C03CA01"], ["Furosemide", "Lasix"]),
    ("CHEMBL435", "HYDROCHLOROTHIAZIDE", "NS(=O)(=O)c1cc2c(cc1Cl)NCNS2(=O)=O", 4, 1959, "-thiazide", "diuretics (thiazide derivatives)",
     ["C03AA03"], ["Hydrochlorothiazide"]),
    ("CHEMBL70", "MORPHINE", "CN1CCC23c4c5ccc(O)c4OC2C(O)C=CC3C1C5", 4, 1941, None, None, ["N02AA01"], ["Morphine"]),
    ("CHEMBL485", "CODEINE", "COc1ccc2c3c1OC1C(O)C=CC4C(C2)N(C)CCC341", 4, 1950, None, None, ["R05DA04"], ["Codeine"]),
    ("CHEMBL1066", "TRAMADOL", "COc1cccc(C2(O)CCCCC2CN(C)C)c1", 4, 1995, "-adol", "analgesics (mixed opiate receptor agonists/antagonists)",
     ["N02AX02"], ["Tramadol", "Ultram"]),
    ("CHEMBL34259", "METHOTREXATE", "CN(Cc1cnc2nc(N)nc(N)c2n1)c1ccc(C(=O)NC(CCC(=O)O)C(=O)O)cc1", 4, 1953, "-trexate", "folic acid analogues",
     ["L01BA01"], ["Methotrexate", "Trexall"]),
    ("CHEMBL83", "TAMOXIFEN", "CC/C(=C(\\c1ccccc1)c1ccc(OCCN(C)C)cc1)c1ccccc1", 4, 1977, "-ifene", "antiestrogens (clomifene and tamoxifen types)",
     ["L02BA01"], ["Tamoxifen", "Nolvadex"]),
    ("CHEMBL1201585", "TICAGRELOR", "CCCSc1nc(NC2CC2c2ccc(F)c(F)c2)c2nnn(C3CC(OCCO)C(O)C3O)c2n1", 4, 2011, "-grelor", "platelet aggregation inhibitors",
     ["B01AC24"], ["Ticagrelor", "Brilinta"]),
    ("CHEMBL1201577", "TIOTROPIUM", "C[N+]1(C)C2CC(OC(=O)C(O)(c3cccs3)c3cccs3)CC1C1OC12", 4, 2004, "-ium", "quaternary ammonium derivatives",
     ["R03BB04"], ["Tiotropium", "Spiriva"]),
]

# (molecule_chembl_id, efo_term, mesh_heading, max_phase_for_ind)
INDICATIONS = [
    ("CHEMBL714", "asthma", "Asthma", 4),
    ("CHEMBL1263", "asthma", "Asthma", 4),
    ("CHEMBL605", "asthma", "Asthma", 4),
    ("CHEMBL787", "asthma", "Asthma", 4),
    ("CHEMBL603", "asthma", "Asthma", 4),
    ("CHEMBL1370", "asthma", "Asthma", 4),
    ("CHEMBL1473", "asthma", "Asthma", 4),
    ("CHEMBL190", "asthma", "Asthma", 4),
    ("CHEMBL635", "asthma", "Asthma", 4),
    ("CHEMBL384467", "asthma", "Asthma", 4),
    ("CHEMBL1201577", "asthma", "Asthma", 4),
    ("CHEMBL1908391", "asthma", "Asthma", 3),
    ("CHEMBL1370", "allergic asthma", "Asthma", 4),
    ("CHEMBL714", "chronic obstructive pulmonary disease", "Pulmonary Disease, Chronic Obstructive", 4),
    ("CHEMBL112", "pain", "Pain", 4),
    ("CHEMBL112", "fever", "Fever", 4),
    ("CHEMBL25", "pain", "Pain", 4),
    ("CHEMBL521", "pain", "Pain", 4),
    ("CHEMBL27", "hypertension", "Hypertension", 4),
    ("CHEMBL24", "hypertension", "Hypertension", 4),
    ("CHEMBL13", "hypertension", "Hypertension", 4),
    ("CHEMBL1237", "hypertension", "Hypertension", 4),
    ("CHEMBL191", "hypertension", "Hypertension", 4),
    ("CHEMBL1491", "hypertension", "Hypertension", 4),
    ("CHEMBL1431", "type 2 diabetes mellitus", "Diabetes Mellitus, Type 2", 4),
    ("CHEMBL1422", "type 2 diabetes mellitus", "Diabetes Mellitus, Type 2", 4),
    ("CHEMBL941", "chronic myelogenous leukemia", "Leukemia, Myelogenous, Chronic, BCR-ABL Positive", 4),
]

# (target_chembl_id, pref_name, organism, target_type, [(symbol, syn_type)])
TARGETS = [
    ("CHEMBL1163125", "Bromodomain-containing protein 4", "Homo sapiens", "SINGLE PROTEIN",
     [("BRD4", "GENE_SYMBOL"), ("HUNK1", "GENE_SYMBOL_OTHER"), ("Protein HUNK1", "UNIPROT")]),
    ("CHEMBL3885640", "Bromodomain-containing protein 4", "Mus musculus", "SINGLE PROTEIN",
     [("Brd4", "GENE_SYMBOL"), ("Mcap", "GENE_SYMBOL_OTHER")]),
    ("CHEMBL1293289", "Bromodomain-containing protein 2", "Homo sapiens", "SINGLE PROTEIN",
     [("BRD2", "GENE_SYMBOL"), ("KIAA9001", "GENE_SYMBOL_OTHER")]),
    ("CHEMBL4296026", "BRD4 degrader interaction partner", "Homo sapiens", "PROTEIN-PROTEIN INTERACTION",
     [("BRD4 bromodomain 1", "UNIPROT"), ("VHL", "GENE_SYMBOL")]),
    ("CHEMBL203", "Epidermal growth factor receptor erbB1", "Homo sapiens", "SINGLE PROTEIN",
     [("EGFR", "GENE_SYMBOL"), ("ERBB1", "GENE_SYMBOL_OTHER")]),
    ("CHEMBL213", "Beta-1 adrenergic receptor", "Homo sapiens", "SINGLE PROTEIN",
     [("ADRB1", "GENE_SYMBOL"), ("ADRB1R", "GENE_SYMBOL_OTHER")]),
]

# (tissue_chembl_id, pref_name, uberon_id, bto_id, efo_id)
TISSUES = [
    ("CHEMBL3638188", "Brain", "UBERON:0000955", "BTO:0000142", "UBERON_0000955"),
    ("CHEMBL3638194", "Brain stem", "UBERON:0002298", "BTO:0000146", None),
    ("CHEMBL3559721", "Liver", "UBERON:0002107", "BTO:0000759", "UBERON_0002107"),
    ("CHEMBL3559723", "Lung", "UBERON:0002048", "BTO:0000763", "UBERON_0002048"),
    ("CHEMBL3559722", "Kidney", "UBERON:0002113", "BTO:0000671", "UBERON_0002113"),
    ("CHEMBL3638178", "Heart", "UBERON:0000948", "BTO:0000562", "UBERON_0000948"),
    ("CHEMBL3559725", "Blood", "UBERON:0000178", "BTO:0000089", "UBERON_0000178"),
]

FPGEN = rdFingerprintGenerator.GetMorganGenerator(radius=2, fpSize=2048)


def build_molecules():
    table = {}
    for (cid, name, smiles, phase, year, stem, stem_def, atc, syns) in MOLECULES:
        mol = Chem.MolFromSmiles(smiles)
        if mol is None:
            raise SystemExit(f"bad SMILES for {cid}: {smiles}")
        table[cid] = {
            "mol": mol,
            "fp": FPGEN.GetFingerprint(mol),
            "json": {
                "molecule_chembl_id": cid,
                "pref_name": name,
                "max_phase": None if phase is None else f"{float(phase):.1f}",
                "first_approval": year,
                "usan_stem": stem,
                "usan_stem_definition": stem_def,
                "atc_classifications": atc,
                "molecule_type": "Small molecule",
                "molecule_structures": {
                    "canonical_smiles": Chem.MolToSmiles(mol),
                    "standard_inchi_key": Chem.MolToInchiKey(mol),
                },
                "molecule_properties": {
                    "full_molformula": rdMolDescriptors.CalcMolFormula(mol),
                    "full_mwt": f"{rdMolDescriptors.CalcExactMolWt(mol):.2f}",
                },
                "molecule_synonyms": [
                    {"molecule_synonym": s, "syn_type": "TRADE_NAME" if s[0].isupper() and s.lower() != name.lower() else "INN"}
                    for s in syns
                ],
            },
        }
    return table


MOLS = build_molecules()


def depiction(mol):
    drawer = rdMolDraw2D.MolDraw2DSVG(500, 500)
    drawer.drawOptions().clearBackground = True
    drawer.DrawMolecule(mol)
    drawer.FinishDrawing()
    return drawer.GetDrawingText()


def page(items, key, params, path):
    limit = int(params.get("limit", 20))
    offset = int(params.get("offset", 0))
    chunk = items[offset:offset + limit]
    total = len(items)
    return {
        key: chunk,
        "page_meta": {
            "limit": limit,
            "offset": offset,
            "total_count": total,
            "next": None if offset + limit >= total else f"{PREFIX}/{path}?limit={limit}&offset={offset + limit}",
            "previous": None if offset == 0 else f"{PREFIX}/{path}?limit={limit}&offset={max(0, offset - limit)}",
        },
    }


def canonical_or_none(smiles):
    mol = Chem.MolFromSmiles(smiles)
    return None if mol is None else (mol, Chem.MolToSmiles(mol))


def molecule_list(params):
    rows = list(MOLS.values())
    if "molecule_synonyms__molecule_synonym__icontains" in params:
        needle = params["molecule_synonyms__molecule_synonym__icontains"].lower()
        rows = [r for r in rows if any(needle in s["molecule_synonym"].lower() for s in r["json"]["molecule_synonyms"])
                or needle in (r["json"]["pref_name"] or "").lower()]
    if "molecule_structures__canonical_smiles__flexmatch" in params:
        parsed = canonical_or_none(params["molecule_structures__canonical_smiles__flexmatch"])
        if parsed is None:
            return 400, {"error_message": "Invalid SMILES"}
        rows = [r for r in rows if r["json"]["molecule_structures"]["canonical_smiles"] == parsed[1]]
    if "usan_stem" in params:
        rows = [r for r in rows if r["json"]["usan_stem"] == params["usan_stem"]]
    if "max_phase" in params:
        want = float(params["max_phase"])
        rows = [r for r in rows if r["json"]["max_phase"] is not None and float(r["json"]["max_phase"]) == want]
    if "first_approval__isnull" in params:
        isnull = params["first_approval__isnull"].lower() == "true"
        rows = [r for r in rows if (r["json"]["first_approval"] is None) == isnull]
    if "molecule_chembl_id__in" in params:
        ids = params["molecule_chembl_id__in"].split(",")
        rows = [MOLS[i] for i in ids if i in MOLS]
    if params.get("order_by") == "-first_approval":
        rows.sort(key=lambda r: (-(r["json"]["first_approval"] or 0), r["json"]["molecule_chembl_id"]))
    return 200, page([r["json"] for r in rows], "molecules", params, "molecule.json")


def similarity(smiles, threshold, params):
    parsed = canonical_or_none(smiles)
    if parsed is None or not 40 <= threshold <= 100:
        return 400, {"error_message": "Invalid SMILES or similarity"}
    fp = FPGEN.GetFingerprint(parsed[0])
    hits = []
    for r in MOLS.values():
        sim = DataStructs.TanimotoSimilarity(fp, r["fp"]) * 100
        if sim >= threshold:
            hits.append((sim, r))
    hits.sort(key=lambda h: (-h[0], h[1]["json"]["molecule_chembl_id"]))
    items = [dict(r["json"], similarity=f"{sim:.1f}") for sim, r in hits]
    return 200, page(items, "molecules", params, f"similarity/{smiles}/{threshold}.json")


def target_list(params):
    needle = params.get("target_synonym__icontains", "").lower()
    items = []
    for tid, name, org, ttype, syns in TARGETS:
        if needle and not any(needle in s.lower() for s, _ in syns):
            continue
        items.append({
            "target_chembl_id": tid,
            "pref_name": name,
            "organism": org,
            "target_type": ttype,
            "target_components": [{
                "component_type": "PROTEIN",
                "target_component_synonyms": [{"component_synonym": s, "syn_type": t} for s, t in syns],
            }],
        })
    return 200, page(items, "targets", params, "target.json")


def tissue_list(params):
    items = []
    for tid, name, uberon, bto, efo in TISSUES:
        row = {"tissue_chembl_id": tid, "pref_name": name, "uberon_id": uberon, "bto_id": bto, "efo_id": efo}
        ok = True
        for field in ("uberon_id", "bto_id", "efo_id", "tissue_chembl_id"):
            if field in params and row[field] != params[field]:
                ok = False
        if "pref_name__icontains" in params and params["pref_name__icontains"].lower() not in name.lower():
            ok = False
        if ok:
            items.append(row)
    return 200, page(items, "tissues", params, "tissue.json")


def indication_list(params):
    needle = params.get("efo_term__icontains", "").lower()
    items = []
    for i, (cid, efo, mesh, phase) in enumerate(INDICATIONS):
        if needle in efo.lower():
            items.append({
                "drugind_id": 100000 + i,
                "molecule_chembl_id": cid,
                "efo_term": efo,
                "mesh_heading": mesh,
                "max_phase_for_ind": f"{float(phase):.1f}",
            })
    return 200, page(items, "drug_indications", params, "drug_indication.json")


def route(path, params):
    """Returns (status, content_type, body bytes)."""
    if not path.startswith(PREFIX + "/"):
        return 404, "application/json", b'{"error_message": "Not found"}'
    rest = path[len(PREFIX) + 1:]
    result = None
    if rest == "status.json":
        result = 200, {"chembl_db_version": "ChEMBL_35", "chembl_release_date": "2024-12-01", "status": "UP"}
    elif rest == "molecule.json":
        result = molecule_list(params)
    elif rest == "target.json":
        result = target_list(params)
    elif rest == "tissue.json":
        result = tissue_list(params)
    elif rest == "drug_indication.json":
        result = indication_list(params)
    elif m := re.fullmatch(r"molecule/(CHEMBL\d+)\.json", rest):
        mol = MOLS.get(m.group(1))
        result = (200, mol["json"]) if mol else (404, {"error_message": "No molecule found"})
    elif m := re.fullmatch(r"image/(CHEMBL\d+)\.svg", rest):
        mol = MOLS.get(m.group(1))
        if mol is None:
            return 404, "application/json", b'{"error_message": "No image found"}'
        return 200, "image/svg+xml", depiction(mol["mol"]).encode()
    elif m := re.fullmatch(r"similarity/(.+)/(\d+)\.json", rest):
        result = similarity(m.group(1), int(m.group(2)), params)
    if result is None:
        return 404, "application/json", b'{"error_message": "Not found"}'
    status, body = result
    return status, "application/json", json.dumps(body, sort_keys=True).encode()


class Handler(BaseHTTPRequestHandler):
    def do_GET(self):
        parts = urlsplit(self.path)
        path = unquote(parts.path)
        params = dict(parse_qsl(parts.query, keep_blank_values=True))
        status, ctype, body = route(path, params)
        self.send_response(status)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, fmt, *args):
        pass


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--port", type=int, default=8765)
    args = ap.parse_args()
    ThreadingHTTPServer(("127.0.0.1", args.port), Handler).serve_forever()


if __name__ == "__main__":
    main()
