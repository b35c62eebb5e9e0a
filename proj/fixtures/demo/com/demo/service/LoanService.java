package com.demo.service;

import com.demo.model.Book;
import com.demo.model.Loan;
import com.demo.model.Member;
import com.demo.repo.BookRepository;
import com.demo.repo.LoanRepository;
import com.demo.repo.MemberRepository;
import com.demo.util.Money;
import com.demo.util.Result;
import java.time.LocalDate;

public class LoanService {
    private final BookRepository books;
    private final MemberRepository members;
    private final LoanRepository loans;
    private final FeeCalculator fees;
    private final NotificationService notifications;
    private int counter;

    public LoanService(BookRepository books, MemberRepository members, LoanRepository loans,
                       FeeCalculator fees, NotificationService notifications) {
        this.books = books;
        this.members = members;
        this.loans = loans;
        this.fees = fees;
        this.notifications = notifications;
    }

    public Result<Loan> borrow(String memberId, String bookId, LocalDate today) {
        Member m = members.findById(memberId).orElse(null);
        if (m == null) {
            return Result.failure("no member " + memberId);
        }
        Book b = books.findById(bookId).orElse(null);
        if (b == null) {
            return Result.failure("no book " + bookId);
        }
        if (!m.canBorrow()) {
            return Result.failure("member cannot borrow");
        }
        if (!b.isAvailable()) {
            notifications.notifyAll(m, b.getTitle() + " is not available");
            return Result.failure("unavailable");
        }
        b.checkOut();
        Loan loan = new Loan("L" + (++counter), b, m, today);
        loans.save(loan);
        return Result.success(loan);
    }

    public Result<Money> giveBack(String loanId, LocalDate today) {
        Loan loan = loans.findById(loanId).orElse(null);
        if (loan == null || loan.isReturned()) {
            return Result.failure("no open loan " + loanId);
        }
        Money fee = fees.fee(loan, today);
        loan.close(today);
        if (!fee.isZero()) {
            loan.getMember().charge(fee.amount());
        }
        return Result.success(fee);
    }

    public int sweepOverdue(LocalDate today) {
        return notifications.remindOverdue(loans.overdue(today), today);
    }
}
