#pragma once

// Generated by scripts/gen_tw1_table.py from the same knots as data/tw1_table.txt.

#include <array>
#include <utility>

namespace spikecount::detail {

inline constexpr std::array<std::pair<double, double>, 241> tw1_knots{{
    {-6.00, 3.000333246402884e-06},
    {-5.95, 3.822110343350443e-06},
    {-5.90, 4.878203630003639e-06},
    {-5.85, 6.230130290639164e-06},
    {-5.80, 7.953920895952710e-06},
    {-5.75, 1.014314080091266e-05},
    {-5.70, 1.291244405381888e-05},
    {-5.65, 1.640173197099237e-05},
    {-5.60, 2.078099382826790e-05},
    {-5.55, 2.625591189019179e-05},
    {-5.50, 3.307431701035810e-05},
    {-5.45, 4.153358402998058e-05},
    {-5.40, 5.198905789488089e-05},
    {-5.35, 6.486360149930604e-05},
    {-5.30, 8.065835443369142e-05},
    {-5.25, 9.996478773948895e-05},
    {-5.20, 1.234781331381194e-04},
    {-5.15, 1.520122556968029e-04},
    {-5.10, 1.865160262390065e-04},
    {-5.05, 2.280912337571742e-04},
    {-5.00, 2.780120584467397e-04},
    {-4.95, 3.377461026222805e-04},
    {-4.90, 4.089769496502556e-04},
    {-4.85, 4.936281901744421e-04},
    {-4.80, 5.938888204673865e-04},
    {-4.75, 7.122398799688977e-04},
    {-4.70, 8.514821543487490e-04},
    {-4.65, 1.014764727266395e-03},
    {-4.60, 1.205614119023269e-03},
    {-4.55, 1.427963704282852e-03},
    {-4.50, 1.686183054846346e-03},
    {-4.45, 1.985106808114897e-03},
    {-4.40, 2.330062618426105e-03},
    {-4.35, 2.726897708090503e-03},
    {-4.30, 3.182003498879270e-03},
    {-4.25, 3.702337774172445e-03},
    {-4.20, 4.295443798188145e-03},
    {-4.15, 4.969465802867665e-03},
    {-4.10, 5.733160246199591e-03},
    {-4.05, 6.595902249016954e-03},
    {-4.00, 7.567686631448740e-03},
    {-3.95, 8.659122995904968e-03},
    {-3.90, 9.881424341180906e-03},
    {-3.85, 1.124638874217492e-02},
    {-3.80, 1.276637369177683e-02},
    {-3.75, 1.445426277536509e-02},
    {-3.70, 1.632342443340630e-02},
    {-3.65, 1.838766266299311e-02},
    {-3.60, 2.066115961355396e-02},
    {-3.55, 2.315841014397715e-02},
    {-3.50, 2.589414852628174e-02},
    {-3.45, 2.888326760281085e-02},
    {-3.40, 3.214073082761485e-02},
    {-3.35, 3.568147774598576e-02},
    {-3.30, 3.952032358666026e-02},
    {-3.25, 4.367185375668900e-02},
    {-3.20, 4.815031413700818e-02},
    {-3.15, 5.296949817509292e-02},
    {-3.10, 5.814263185759624e-02},
    {-3.05, 6.368225771862222e-02},
    {-3.00, 6.960011909654591e-02},
    {-2.95, 7.590704589263608e-02},
    {-2.90, 8.261284310704012e-02},
    {-2.85, 8.972618343116089e-02},
    {-2.80, 9.725450515971619e-02},
    {-2.75, 1.052039166507287e-01},
    {-2.70, 1.135791085077360e-01},
    {-2.65, 1.223832745863229e-01},
    {-2.60, 1.316180428377357e-01},
    {-2.55, 1.412834168972409e-01},
    {-2.50, 1.513777292057339e-01},
    {-2.45, 1.618976063218504e-01},
    {-2.40, 1.728379469406792e-01},
    {-2.35, 1.841919129864228e-01},
    {-2.30, 1.959509339925322e-01},
    {-2.25, 2.081047248264013e-01},
    {-2.20, 2.206413166592735e-01},
    {-2.15, 2.335471009279976e-01},
    {-2.10, 2.468068858861414e-01},
    {-2.05, 2.604039651999678e-01},
    {-2.00, 2.743201979119716e-01},
    {-1.95, 2.885360989729920e-01},
    {-1.90, 3.030309394349045e-01},
    {-1.85, 3.177828553009860e-01},
    {-1.80, 3.327689639512562e-01},
    {-1.75, 3.479654869962142e-01},
    {-1.70, 3.633478783649270e-01},
    {-1.65, 3.788909564024765e-01},
    {-1.60, 3.945690387373252e-01},
    {-1.55, 4.103560786807824e-01},
    {-1.50, 4.262258019378225e-01},
    {-1.45, 4.421518424401835e-01},
    {-1.40, 4.581078761579147e-01},
    {-1.35, 4.740677518030635e-01},
    {-1.30, 4.900056174077488e-01},
    {-1.25, 5.058960418368459e-01},
    {-1.20, 5.217141303815152e-01},
    {-1.15, 5.374356336721549e-01},
    {-1.10, 5.530370492465112e-01},
    {-1.05, 5.684957152090496e-01},
    {-1.00, 5.837898955197619e-01},
    {-0.95, 5.988988565528692e-01},
    {-0.90, 6.138029346670072e-01},
    {-0.85, 6.284835946272543e-01},
    {-0.80, 6.429234788144980e-01},
    {-0.75, 6.571064472482474e-01},
    {-0.70, 6.710176085341176e-01},
    {-0.65, 6.846433419261503e-01},
    {-0.60, 6.979713107662441e-01},
    {-0.55, 7.109904676278530e-01},
    {-0.50, 7.236910515483939e-01},
    {-0.45, 7.360645777843317e-01},
    {-0.40, 7.481038205646144e-01},
    {-0.35, 7.598027893520652e-01},
    {-0.30, 7.711566991486090e-01},
    {-0.25, 7.821619353991918e-01},
    {-0.20, 7.928160140610635e-01},
    {-0.15, 8.031175374104056e-01},
    {-0.10, 8.130661461572413e-01},
    {-0.05, 8.226624684329634e-01},
    {-0.00, 8.319080662029614e-01},
    {0.05, 8.408053796403695e-01},
    {0.10, 8.493576699764894e-01},
    {0.15, 8.575689613194407e-01},
    {0.20, 8.654439819057108e-01},
    {0.25, 8.729881052200018e-01},
    {0.30, 8.802072913876297e-01},
    {0.35, 8.871080292113082e-01},
    {0.40, 8.936972791907929e-01},
    {0.45, 8.999824178301028e-01},
    {0.50, 9.059711835032388e-01},
    {0.55, 9.116716241158823e-01},
    {0.60, 9.170920467676983e-01},
    {0.65, 9.222409695880817e-01},
    {0.70, 9.271270758874649e-01},
    {0.75, 9.317591707370445e-01},
    {0.80, 9.361461400620971e-01},
    {0.85, 9.402969123080432e-01},
    {0.90, 9.442204227142148e-01},
    {0.95, 9.479255802079979e-01},
    {1.00, 9.514212369115544e-01},
    {1.05, 9.547161602349461e-01},
    {1.10, 9.578190075128610e-01},
    {1.15, 9.607383031275610e-01},
    {1.20, 9.634824180478393e-01},
    {1.25, 9.660595517028172e-01},
    {1.30, 9.684777161000739e-01},
    {1.35, 9.707447220900359e-01},
    {1.40, 9.728681676723578e-01},
    {1.45, 9.748554282354136e-01},
    {1.50, 9.767136486166627e-01},
    {1.55, 9.784497368695412e-01},
    {1.60, 9.800703596215767e-01},
    {1.65, 9.815819389083811e-01},
    {1.70, 9.829906503692107e-01},
    {1.75, 9.843024226914130e-01},
    {1.80, 9.855229381935977e-01},
    {1.85, 9.866576344403720e-01},
    {1.90, 9.877117067850621e-01},
    {1.95, 9.886901117408152e-01},
    {2.00, 9.895975710848286e-01},
    {2.05, 9.904385766050473e-01},
    {2.10, 9.912173954035149e-01},
    {2.15, 9.919380756754628e-01},
    {2.20, 9.926044528883319e-01},
    {2.25, 9.932201562899103e-01},
    {2.30, 9.937886156799217e-01},
    {2.35, 9.943130683842775e-01},
    {2.40, 9.947965663762479e-01},
    {2.45, 9.952419834934814e-01},
    {2.50, 9.956520227045181e-01},
    {2.55, 9.960292233828879e-01},
    {2.60, 9.963759685511676e-01},
    {2.65, 9.966944920614884e-01},
    {2.70, 9.969868856828361e-01},
    {2.75, 9.972551060691691e-01},
    {2.80, 9.975009815858223e-01},
    {2.85, 9.977262189748785e-01},
    {2.90, 9.979324098431903e-01},
    {2.95, 9.981210369595320e-01},
    {3.00, 9.982934803498811e-01},
    {3.05, 9.984510231822400e-01},
    {3.10, 9.985948574344856e-01},
    {3.15, 9.987260893407555e-01},
    {3.20, 9.988457446135683e-01},
    {3.25, 9.989547734405304e-01},
    {3.30, 9.990540552558039e-01},
    {3.35, 9.991444032878425e-01},
    {3.40, 9.992265688859384e-01},
    {3.45, 9.993012456290951e-01},
    {3.50, 9.993690732215734e-01},
    {3.55, 9.994306411801277e-01},
    {3.60, 9.994864923185838e-01},
    {3.65, 9.995371260358158e-01},
    {3.70, 9.995830014136592e-01},
    {3.75, 9.996245401315085e-01},
    {3.80, 9.996621292046409e-01},
    {3.85, 9.996961235534129e-01},
    {3.90, 9.997268484105947e-01},
    {3.95, 9.997546015741245e-01},
    {4.00, 9.997796555125672e-01},
    {4.05, 9.998022593304666e-01},
    {4.10, 9.998226406007475e-01},
    {4.15, 9.998410070711320e-01},
    {4.20, 9.998575482514067e-01},
    {4.25, 9.998724368882241e-01},
    {4.30, 9.998858303338697e-01},
    {4.35, 9.998978718152596e-01},
    {4.40, 9.999086916091925e-01},
    {4.45, 9.999184081296517e-01},
    {4.50, 9.999271289327119e-01},
    {4.55, 9.999349516443381e-01},
    {4.60, 9.999419648162013e-01},
    {4.65, 9.999482487142659e-01},
    {4.70, 9.999538760447840e-01},
    {4.75, 9.999589126220136e-01},
    {4.80, 9.999634179817676e-01},
    {4.85, 9.999674459446974e-01},
    {4.90, 9.999710451329282e-01},
    {4.95, 9.999742594435163e-01},
    {5.00, 9.999771284819566e-01},
    {5.05, 9.999796879587411e-01},
    {5.10, 9.999819700518540e-01},
    {5.15, 9.999840037377961e-01},
    {5.20, 9.999858150936832e-01},
    {5.25, 9.999874275726499e-01},
    {5.30, 9.999888622547748e-01},
    {5.35, 9.999901380754854e-01},
    {5.40, 9.999912720333116e-01},
    {5.45, 9.999922793786965e-01},
    {5.50, 9.999931737854763e-01},
    {5.55, 9.999939675064820e-01},
    {5.60, 9.999946715146423e-01},
    {5.65, 9.999952956308256e-01},
    {5.70, 9.999958486396013e-01},
    {5.75, 9.999963383939651e-01},
    {5.80, 9.999967719100249e-01},
    {5.85, 9.999971554525475e-01},
    {5.90, 9.999974946121787e-01},
    {5.95, 9.999977943751182e-01},
    {6.00, 9.999980591859278e-01},
}};

}  // namespace spikecount::detail
